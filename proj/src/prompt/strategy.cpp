#include <array>
#include <utility>

#include "llmdoom/prompt/prompt.hpp"

namespace llmdoom::prompt {

namespace {

struct StrategyNames {
  Strategy strategy;
  std::string_view key;
  std::string_view display;
};

constexpr std::array<StrategyNames, 4> kStrategies{{
    {Strategy::Naive, "naive", "Naive"},
    {Strategy::Walkthrough, "walkthrough", "Walkthrough"},
    {Strategy::Plan, "plan", "Plan"},
    {Strategy::KLevels, "klevels", "K-Levels"},
}};

}  // namespace

std::string_view to_string(Strategy s) { return kStrategies[static_cast<std::size_t>(s)].key; }

std::string_view display_name(Strategy s) { return kStrategies[static_cast<std::size_t>(s)].display; }

std::optional<Strategy> parse_strategy(std::string_view text) {
  for (const auto& n : kStrategies) {
    if (n.key == text) return n.strategy;
  }
  return std::nullopt;
}

void StrategyConfig::validate() const {
  if (planner_cadence <= 0 || experts_cadence <= 0 || agent_cadence <= 0) {
    throw PromptError("cadences must be positive");
  }
  if (experts_cadence % planner_cadence != 0) {
    throw PromptError("experts_cadence must be a multiple of planner_cadence");
  }
  if (k_level != 2) throw PromptError("only k_level 2 is supported");
  if (n_experts < 1) throw PromptError("n_experts must be at least 1");
  if (history_budget_tokens <= 0) throw PromptError("history_budget_tokens must be positive");
}

}  // namespace llmdoom::prompt
