#include <array>

#include "llmdoom/orchestrator/orchestrator.hpp"

namespace llmdoom::orchestrator {

CallSet cadence_due(std::int64_t frame, const prompt::StrategyConfig& cfg) {
  CallSet due;
  due.agent = frame % cfg.agent_cadence == 0;
  due.planner = cfg.uses_plan() && frame % cfg.planner_cadence == 0;
  due.experts = cfg.uses_experts() && frame % cfg.experts_cadence == 0;
  return due;
}

bool StuckDetector::observe(sim::Cell tile) {
  if (tile_ && *tile_ == tile) {
    ++count_;
  } else {
    tile_ = tile;
    count_ = 1;
  }
  return stuck();
}

namespace {
constexpr std::array<std::string_view, 3> kOutcomeNames = {"Finished", "Died", "TimedOut"};
}

std::string_view to_string(Outcome o) { return kOutcomeNames[static_cast<std::size_t>(o)]; }

std::optional<Outcome> parse_outcome(std::string_view text) {
  for (std::size_t i = 0; i < kOutcomeNames.size(); ++i) {
    if (kOutcomeNames[i] == text) return static_cast<Outcome>(i);
  }
  return std::nullopt;
}

void RunConfig::validate() const {
  strategy.validate();
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (max_frames < 1) throw std::invalid_argument("max_frames must be at least 1");
  if (stuck_timeout_frames < 1) throw std::invalid_argument("stuck_timeout_frames must be at least 1");
  backend.validate();
}

}  // namespace llmdoom::orchestrator
