#include <algorithm>
#include <cctype>
#include <fstream>
#include <future>
#include <sstream>

#include "llmdoom/orchestrator/orchestrator.hpp"
#include "llmdoom/scene/scene.hpp"
#include "llmdoom/sim/geometry.hpp"
#include "llmdoom/util/hash.hpp"

namespace llmdoom::orchestrator {

using prompt::HistoryEntry;

std::string prompt_hash(const prompt::PromptBundle& bundle) {
  std::uint64_t h = util::kFnvOffset;
  for (const auto& m : bundle.messages) {
    h = util::fnv1a64(m.role, h);
    h = util::fnv1a64(std::string_view("\0", 1), h);
    h = util::fnv1a64(m.content, h);
    h = util::fnv1a64(std::string_view("\0", 1), h);
  }
  return util::hex64(h);
}

TrialAssets TrialAssets::load(const RunConfig& cfg) {
  const auto data = cfg.data_dir.empty() ? prompt::default_data_dir() : cfg.data_dir;
  TrialAssets assets;
  assets.map = sim::load_map_file(cfg.map_path.empty() ? data / "maps" / "e1m1lite.map" : cfg.map_path);
  assets.library = prompt::PromptLibrary::load(data);
  const auto wt_path = cfg.walkthrough_path.empty() ? data / "walkthrough" / "e1m1.txt" : cfg.walkthrough_path;
  std::ifstream in(wt_path);
  if (!in) throw prompt::PromptError("cannot read walkthrough " + wt_path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  assets.walkthrough = prompt::parse_walkthrough(ss.str());
  return assets;
}

namespace {

llm::CompletionRequest to_request(const prompt::PromptBundle& b) {
  return {b.messages, b.temperature, b.max_tokens, b.profile};
}

struct CallResult {
  CallRecord record;
  bool ok = false;
};

CallResult call(llm::CompletionBackend& backend, const prompt::PromptBundle& bundle) {
  CallResult r;
  r.record.profile = bundle.profile;
  r.record.prompt_hash = prompt_hash(bundle);
  try {
    r.record.completion = backend.complete(to_request(bundle));
    r.ok = true;
  } catch (const llm::BackendError& e) {
    r.record.error = e.what();
  }
  return r;
}

std::string second_line(const std::string& text) {
  const auto nl = text.find('\n');
  if (nl == std::string::npos) return {};
  const auto end = text.find('\n', nl + 1);
  std::string line = text.substr(nl + 1, end == std::string::npos ? std::string::npos : end - nl - 1);
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
  return line;
}

bool is_labeled_room(sim::RoomLabel r) { return r != sim::RoomLabel::None && r != sim::RoomLabel::Hall; }

}  // namespace

Trial run_trial(const RunConfig& cfg, const TrialAssets& assets, llm::CompletionBackend& backend,
                std::uint64_t seed) {
  const auto& strat = cfg.strategy;
  strat.validate();

  Trial trial;
  trial.seed = seed;
  sim::World world = sim::make_world(assets.map, seed);
  StuckDetector stuck(cfg.stuck_timeout_frames);
  std::vector<sim::PressInput> pending;  // consumed from the front
  std::size_t next_press = 0;
  std::vector<HistoryEntry> history;
  std::optional<std::string> plan;
  std::vector<ExpertMove> expert_moves;

  const std::span<const prompt::WalkthroughStep> walkthrough =
      strat.uses_walkthrough() ? std::span<const prompt::WalkthroughStep>(assets.walkthrough)
                               : std::span<const prompt::WalkthroughStep>();

  while (true) {
    const std::int64_t f = world.frame;
    if (f >= cfg.max_frames) {
      trial.outcome = Outcome::TimedOut;
      break;
    }
    FrameRecord rec;
    rec.frame = f;

    const CallSet due = cadence_due(f, strat);
    if (due.any()) {
      const auto scene = scene::describe_scene(world);
      const std::string current_plan = plan.value_or(std::string(kNoPlanYet));

      if (due.experts) {
        prompt::AgentInputs in{&scene, history, walkthrough, current_plan, std::nullopt};
        std::vector<std::future<CallResult>> futures;
        for (int i = 1; i <= strat.n_experts; ++i) {
          auto bundle = prompt::assemble_agent_prompt(assets.library, strat, in, llm::Profile::expert(i));
          futures.push_back(std::async(std::launch::async, [&backend, b = std::move(bundle)] { return call(backend, b); }));
        }
        expert_moves.clear();
        for (int i = 1; i <= strat.n_experts; ++i) {
          auto r = futures[static_cast<std::size_t>(i - 1)].get();
          const auto action = r.ok ? parse_action(r.record.completion) : sim::Action::Wait;
          expert_moves.push_back({i, std::string(sim::canonical_token(action))});
          rec.calls.push_back(std::move(r.record));
        }
      }

      if (due.planner) {
        auto r = call(backend, prompt::assemble_planner_prompt(assets.library, strat, assets.walkthrough, scene, history));
        if (r.ok) plan = r.record.completion;
        rec.calls.push_back(std::move(r.record));
      }

      if (due.agent) {
        prompt::AgentInputs in{&scene, history, walkthrough,
                               strat.uses_plan() ? std::optional<std::string>(plan.value_or(std::string(kNoPlanYet)))
                                                 : std::nullopt,
                               strat.uses_experts() ? std::optional(expert_moves) : std::nullopt};
        auto r = call(backend, prompt::assemble_agent_prompt(assets.library, strat, in));
        const auto action = r.ok ? parse_action(r.record.completion) : sim::Action::Wait;
        pending = expand_action(action);
        next_press = 0;
        history.push_back({f, scene::scene_summary(scene), action, r.ok ? second_line(r.record.completion) : ""});
        rec.calls.push_back(std::move(r.record));
      }
    }

    const sim::PressInput press = next_press < pending.size() ? pending[next_press++] : std::nullopt;
    rec.events = sim::tick(world, press);
    rec.action = press;
    rec.player = world.player;
    rec.room = sim::room_of(world.map, world.player.pos);
    if (is_labeled_room(rec.room) && (trial.room_entries.empty() || trial.room_entries.back().room != rec.room)) {
      trial.room_entries.push_back({rec.room, f});
    }
    const bool switched = std::any_of(rec.events.begin(), rec.events.end(),
                                      [](const sim::Event& e) { return e.kind == sim::EventKind::SwitchActivated; });
    const bool is_stuck = stuck.observe(sim::cell_of(world.player.pos));
    trial.frames.push_back(std::move(rec));
    if (switched) {
      trial.outcome = Outcome::Finished;
      break;
    }
    if (world.player.dead()) {
      trial.outcome = Outcome::Died;
      break;
    }
    if (is_stuck) {
      trial.outcome = Outcome::TimedOut;
      break;
    }
  }
  trial.same_tile_frames = stuck.count();
  return trial;
}

}  // namespace llmdoom::orchestrator
