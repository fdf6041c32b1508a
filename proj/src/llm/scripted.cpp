#include "llmdoom/llm/scripted.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <regex>
#include <sstream>

#include "llmdoom/llm/backend.hpp"

namespace llmdoom::llm {

using scene::Bearing;
using scene::Observation;
using scene::SeenThing;

namespace {

constexpr std::string_view kPlayBegins = "Play begins here!";
constexpr std::array<std::string_view, 3> kTargets = {"switch", "closed door", "open doorway"};

bool is_enemy(const SeenThing& t) { return t.noun == "zombieman" || t.noun == "imp"; }

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

// Text between `header` and the next blank line (or `stop`), searching from `from`.
std::optional<std::string> section(std::string_view text, std::string_view header, std::string_view stop,
                                   std::size_t from = 0) {
  const auto start = text.find(header, from);
  if (start == std::string_view::npos) return std::nullopt;
  const auto body = start + header.size();
  const auto end = text.find(stop, body);
  return std::string(text.substr(body, end == std::string_view::npos ? std::string_view::npos : end - body));
}

std::vector<std::string> numbered_lines(std::string_view text) {
  static const std::regex kStep(R"(^\s*\d+\.\s*(.*)$)");
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::smatch m;
    if (std::regex_match(line, m, kStep)) out.push_back(m[1]);
  }
  return out;
}

std::string_view turn_toward(Bearing b) { return b == Bearing::Left ? "LEFT" : "RIGHT"; }

bool is_opposite_turn(std::string_view last, Bearing wanted) {
  return (wanted == Bearing::Left && last == "RIGHT") || (wanted == Bearing::Right && last == "LEFT");
}

std::optional<std::string> follow_plan(const Observation& obs, const std::vector<std::string>& steps,
                                       std::string_view last) {
  for (const auto& raw : steps) {
    const std::string step = lower(raw);
    for (auto target : kTargets) {
      if (step.find(target) == std::string::npos) continue;
      const auto it = std::find_if(obs.things.begin(), obs.things.end(),
                                   [&](const SeenThing& t) { return t.noun == target; });
      if (it == obs.things.end()) continue;
      if (it->bearing == Bearing::Centre || is_opposite_turn(last, it->bearing)) return "UP";
      return std::string(turn_toward(it->bearing));
    }
    if (step.find("turn left") != std::string::npos) return "LEFT";
    if (step.find("turn right") != std::string::npos) return "RIGHT";
  }
  return std::nullopt;
}

}  // namespace

PolicyInput parse_agent_prompt(std::string_view text) {
  PolicyInput in;
  const auto live = text.rfind(kPlayBegins);
  if (live == std::string_view::npos) return in;
  const std::string_view tail = text.substr(live);

  if (auto history = section(tail, "|History|\n", "\n\nState:\n")) {
    static const std::regex kAction(R"( -> ([A-Z0-9 ]+?)(?: \| |$))");
    std::istringstream lines(*history);
    std::string line;
    while (std::getline(lines, line)) {
      std::smatch m;
      if (std::regex_search(line, m, kAction)) in.recent_actions.push_back(m[1]);
    }
  }
  const auto state_at = tail.find("State:\n");
  if (state_at != std::string_view::npos) {
    // The State block ends at the first optional section or at |Action|.
    std::size_t end = tail.size();
    for (std::string_view marker : {"\nPlan:\n", "\nExpert moves:\n", "|Action|"}) {
      end = std::min(end, tail.find(marker, state_at));
    }
    in.observation = scene::parse_scene(tail.substr(state_at + 7, end - state_at - 7));
  }
  if (auto plan = section(tail, "\nPlan:\n", "\n\n", state_at == std::string_view::npos ? 0 : state_at)) {
    in.plan_steps = numbered_lines(*plan);
  }
  return in;
}

std::string scripted_policy(const PolicyInput& input) {
  if (!input.observation) return "WAIT";
  const Observation& obs = *input.observation;
  const std::string_view last = input.recent_actions.empty() ? "" : std::string_view(input.recent_actions.back());

  const auto enemy = std::find_if(obs.things.begin(), obs.things.end(), is_enemy);
  if (enemy != obs.things.end()) {
    const auto centred = std::find_if(obs.things.begin(), obs.things.end(), [](const SeenThing& t) {
      return is_enemy(t) && t.bearing == Bearing::Centre;
    });
    if (centred != obs.things.end()) return "FIRE";
    if (is_opposite_turn(last, enemy->bearing)) return enemy->within_reach ? "FIRE" : "UP";
    return std::string(turn_toward(enemy->bearing));
  }
  if (obs.hurt && !obs.on_acid) return "RIGHT";

  for (const auto& t : obs.things) {
    if (t.within_reach && (t.noun == "closed door" || t.noun == "switch")) return "USE";
  }
  if (obs.blocked && last != "STRAFE LEFT") return "STRAFE LEFT";
  if (auto step = follow_plan(obs, input.plan_steps, last)) return *step;
  return "UP";
}

std::string scripted_plan(std::string_view text) {
  std::optional<Observation> obs;
  const auto state_at = text.rfind("State:\n");
  if (state_at != std::string_view::npos) {
    const auto end = text.find("|Plan|", state_at);
    obs = scene::parse_scene(text.substr(state_at + 7, end == std::string_view::npos ? std::string_view::npos
                                                                                     : end - state_at - 7));
  }
  std::vector<std::string> steps;
  if (obs) {
    const auto sees = [&](std::string_view noun) {
      return std::any_of(obs->things.begin(), obs->things.end(), [&](const SeenThing& t) { return t.noun == noun; });
    };
    for (const auto& t : obs->things) {
      if (is_enemy(t)) {
        steps.push_back("Shoot the " + t.noun + ".");
        break;
      }
    }
    // An open doorway is only worth heading for when nothing better is in view.
    if (!sees("switch") && !sees("closed door") && sees("open doorway")) {
      steps.emplace_back("Go through the open doorway.");
    }
  }
  steps.emplace_back("Walk UP to the switch and USE it.");
  steps.emplace_back("Walk UP to the nearest closed door and USE it.");
  steps.emplace_back("If nothing useful is in view, turn RIGHT to search for a door.");
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i > 0) out += '\n';
    out += std::to_string(i + 1) + ". " + steps[i];
  }
  return out;
}

std::string ScriptedBackend::do_complete(const CompletionRequest& req) {
  const std::string& user = req.messages.back().content;
  switch (req.profile.kind) {
    case ProfileKind::Planner: return scripted_plan(user);
    case ProfileKind::Vision: return user;
    case ProfileKind::Agent:
    case ProfileKind::Expert: break;
  }
  return scripted_policy(parse_agent_prompt(user));
}

}  // namespace llmdoom::llm
