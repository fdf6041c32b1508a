#include <doctest.h>

#include <mutex>

#include "llmdoom/orchestrator/orchestrator.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace llmdoom;
using orchestrator::CallSet;
using orchestrator::parse_action;
using sim::Action;

namespace {

orchestrator::RunConfig config(prompt::Strategy s, std::int64_t max_frames) {
  orchestrator::RunConfig cfg;
  cfg.strategy.strategy = s;
  cfg.max_frames = max_frames;
  cfg.data_dir = testing::data_dir();
  return cfg;
}

// Records every request; answers by profile.
class RecordingBackend final : public llm::CompletionBackend {
 public:
  std::vector<llm::CompletionRequest> requests() const {
    std::lock_guard lock(mu_);
    return requests_;
  }

 protected:
  std::string do_complete(const llm::CompletionRequest& req) override {
    std::lock_guard lock(mu_);
    requests_.push_back(req);
    switch (req.profile.kind) {
      case llm::ProfileKind::Planner: return "1. Planned step " + std::to_string(requests_.size()) + ".";
      case llm::ProfileKind::Expert: return req.profile.expert_index == 2 ? "FIRE" : "UP";
      default: return "WAIT\nresting";
    }
  }

 private:
  mutable std::mutex mu_;
  std::vector<llm::CompletionRequest> requests_;
};

class FailingBackend final : public llm::CompletionBackend {
 protected:
  std::string do_complete(const llm::CompletionRequest&) override { throw llm::BackendUnavailable("down"); }
};

}  // namespace

TEST_CASE("action parsing normalises and falls back to WAIT") {
  CHECK(parse_action("UP") == Action::Up);
  CHECK(parse_action("fire!") == Action::Fire);
  CHECK(parse_action("  strafe left.\nbecause") == Action::StrafeLeft);
  CHECK(parse_action("3") == Action::Weapon3);
  CHECK(parse_action("advance boldly") == Action::Wait);
  CHECK(parse_action("GAME OVER") == Action::Wait);
  CHECK(parse_action("") == Action::Wait);
  CHECK(parse_action("UPWARD") == Action::Wait);
}

TEST_CASE("expansion into press ticks") {
  CHECK(orchestrator::expand_action(Action::Up) == std::vector<sim::PressInput>(3, Action::Up));
  CHECK(orchestrator::expand_action(Action::Left) == std::vector<sim::PressInput>(3, Action::Left));
  CHECK(orchestrator::expand_action(Action::Fire) == std::vector<sim::PressInput>{Action::Fire});
  CHECK(orchestrator::expand_action(Action::Wait) == std::vector<sim::PressInput>(2, std::nullopt));
  CHECK(orchestrator::expand_action(Action::Weapon2) == std::vector<sim::PressInput>{Action::Weapon2});
}

TEST_CASE("call cadence") {
  prompt::StrategyConfig k;
  k.strategy = prompt::Strategy::KLevels;
  prompt::StrategyConfig plan;
  plan.strategy = prompt::Strategy::Plan;
  prompt::StrategyConfig naive;
  CHECK(orchestrator::cadence_due(0, k) == CallSet{true, true, true});
  CHECK(orchestrator::cadence_due(30, plan) == CallSet{true, true, false});
  CHECK(orchestrator::cadence_due(1, k) == CallSet{});
  CHECK(orchestrator::cadence_due(60, naive) == CallSet{true, false, false});
  int agent = 0, planner = 0, experts = 0;
  for (int f = 0; f < 600; ++f) {
    const auto c = orchestrator::cadence_due(f, k);
    agent += c.agent;
    planner += c.planner;
    experts += c.experts;
  }
  CHECK(agent == 300);
  CHECK(planner == 20);
  CHECK(experts == 10);
}

TEST_CASE("stuck detection boundary") {
  orchestrator::StuckDetector d(1000);
  for (int i = 0; i < 1000; ++i) CHECK_FALSE(d.observe({1, 1}));
  CHECK(d.observe({2, 1}) == false);
  CHECK(d.count() == 1);
  for (int i = 0; i < 999; ++i) d.observe({2, 1});
  CHECK(d.count() == 1000);
  CHECK_FALSE(d.stuck());
  CHECK(d.observe({2, 1}));
  orchestrator::StuckDetector osc(10);
  for (int i = 0; i < 100; ++i) CHECK_FALSE(osc.observe({i % 2, 0}));
}

TEST_CASE("outcome names round-trip") {
  for (auto o : {orchestrator::Outcome::Finished, orchestrator::Outcome::Died, orchestrator::Outcome::TimedOut}) {
    CHECK(orchestrator::parse_outcome(orchestrator::to_string(o)) == o);
  }
}

TEST_CASE("run config validation") {
  auto cfg = config(prompt::Strategy::Naive, 10);
  CHECK_NOTHROW(cfg.validate());
  cfg.max_frames = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = config(prompt::Strategy::Naive, 10);
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("empty completions time out with every action WAIT") {
  auto cfg = config(prompt::Strategy::Walkthrough, 5000);
  const auto assets = orchestrator::TrialAssets::load(cfg);
  oracle::ConstantBackend backend("");
  const auto t = orchestrator::run_trial(cfg, assets, backend, 1);
  CHECK(t.outcome == orchestrator::Outcome::TimedOut);
  CHECK(t.frames.size() == 1001);
  for (const auto& r : t.frames) CHECK_FALSE(r.action.has_value());
}

TEST_CASE("frame records are contiguous and calls follow the schedule") {
  auto cfg = config(prompt::Strategy::KLevels, 130);
  const auto assets = orchestrator::TrialAssets::load(cfg);
  RecordingBackend backend;
  const auto t = orchestrator::run_trial(cfg, assets, backend, 3);
  REQUIRE(t.frames.size() == 130);
  for (std::size_t i = 0; i < t.frames.size(); ++i) {
    const auto& r = t.frames[i];
    CHECK(r.frame == static_cast<std::int64_t>(i));
    const auto due = orchestrator::cadence_due(r.frame, cfg.strategy);
    std::vector<llm::Profile> expected;
    if (due.experts) expected = {llm::Profile::expert(1), llm::Profile::expert(2), llm::Profile::expert(3)};
    if (due.planner) expected.push_back(llm::Profile::planner());
    if (due.agent) expected.push_back(llm::Profile::agent());
    std::vector<llm::Profile> got;
    for (const auto& c : r.calls) got.push_back(c.profile);
    CHECK(got == expected);
  }
  CHECK(t.room_entries.front() == orchestrator::RoomEntry{sim::RoomLabel::A, 0});
}

TEST_CASE("experts see the placeholder plan first, the agent sees the fresh plan and moves") {
  auto cfg = config(prompt::Strategy::KLevels, 1);
  const auto assets = orchestrator::TrialAssets::load(cfg);
  RecordingBackend backend;
  orchestrator::run_trial(cfg, assets, backend, 3);
  const auto reqs = backend.requests();
  REQUIRE(reqs.size() == 5);
  std::string planner_reply;
  for (std::size_t i = 0; i < reqs.size(); ++i) {
    const auto& user = reqs[i].messages.back().content;
    const auto live = user.substr(user.rfind("Play begins here!") == std::string::npos ? 0 : user.rfind("Play begins here!"));
    switch (reqs[i].profile.kind) {
      case llm::ProfileKind::Expert: CHECK(live.find(orchestrator::kNoPlanYet) != std::string::npos); break;
      case llm::ProfileKind::Planner: planner_reply = "1. Planned step " + std::to_string(i + 1) + "."; break;
      case llm::ProfileKind::Agent:
        CHECK(live.find(planner_reply) != std::string::npos);
        CHECK(live.find("Expert 1: UP\nExpert 2: FIRE\nExpert 3: UP") != std::string::npos);
        break;
      case llm::ProfileKind::Vision: FAIL("unexpected vision call"); break;
    }
  }
}

TEST_CASE("backend outages become WAIT and are recorded") {
  auto cfg = config(prompt::Strategy::Plan, 40);
  const auto assets = orchestrator::TrialAssets::load(cfg);
  FailingBackend backend;
  const auto t = orchestrator::run_trial(cfg, assets, backend, 3);
  REQUIRE(t.frames.size() == 40);
  for (const auto& r : t.frames) {
    CHECK_FALSE(r.action.has_value());
    for (const auto& c : r.calls) {
      CHECK(c.completion.empty());
      CHECK(c.error.find("down") != std::string::npos);
    }
  }
}

TEST_CASE("scripted trials are deterministic and finish under plan") {
  auto cfg = config(prompt::Strategy::Plan, 5000);
  const auto assets = orchestrator::TrialAssets::load(cfg);
  llm::ScriptedBackend a;
  llm::ScriptedBackend b;
  const auto ta = orchestrator::run_trial(cfg, assets, a, 42);
  const auto tb = orchestrator::run_trial(cfg, assets, b, 42);
  CHECK(ta == tb);
  CHECK(ta.outcome == orchestrator::Outcome::Finished);
  CHECK(ta.frames.back().room == sim::RoomLabel::D);
}

TEST_CASE("a motion press latches across frames until the next agent call") {
  auto cfg = config(prompt::Strategy::Naive, 6);
  const auto assets = orchestrator::TrialAssets::load(cfg);
  oracle::ConstantBackend backend("UP");
  const auto t = orchestrator::run_trial(cfg, assets, backend, 1);
  for (const auto& r : t.frames) CHECK(r.action == sim::PressInput{Action::Up});
  CHECK(t.frames.back().player.pos.y == doctest::Approx(11.5 - 6 * 0.4));
}
