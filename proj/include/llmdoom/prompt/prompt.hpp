#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "llmdoom/llm/profile.hpp"
#include "llmdoom/scene/scene.hpp"
#include "llmdoom/sim/types.hpp"

namespace llmdoom::prompt {

enum class Strategy { Naive, Walkthrough, Plan, KLevels };

// "naive", "walkthrough", "plan", "klevels".
std::string_view to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view text);
// Table row label: "Naive", "Walkthrough", "Plan", "K-Levels".
std::string_view display_name(Strategy s);

class PromptError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StrategyConfig {
  Strategy strategy = Strategy::Naive;
  int k_level = 2;
  int n_experts = 3;
  int history_budget_tokens = 24000;
  int planner_cadence = 30;
  int experts_cadence = 60;
  int agent_cadence = 2;

  bool uses_walkthrough() const { return strategy != Strategy::Naive; }
  bool uses_plan() const { return strategy == Strategy::Plan || strategy == Strategy::KLevels; }
  bool uses_experts() const { return strategy == Strategy::KLevels; }

  // Throws PromptError when cadences or the k-level setup are inconsistent.
  void validate() const;

  friend bool operator==(const StrategyConfig&, const StrategyConfig&) = default;
};

struct HistoryEntry {
  std::int64_t frame = 0;
  std::string scene_summary;
  sim::Action action = sim::Action::Wait;
  std::string explanation;

  // Single line, no trailing newline: "[frame] summary -> ACTION | why".
  std::string render() const;
  friend bool operator==(const HistoryEntry&, const HistoryEntry&) = default;
};

struct WalkthroughStep {
  int index = 0;
  std::string text;
  friend bool operator==(const WalkthroughStep&, const WalkthroughStep&) = default;
};

// Steps start with "N." at the beginning of a line; other lines continue the
// previous step. Throws PromptError on gaps in the numbering.
std::vector<WalkthroughStep> parse_walkthrough(std::string_view text);
std::string render_walkthrough(std::span<const WalkthroughStep> steps);

inline constexpr int kModelTokenLimit = 32768;

// ceil(chars / 4). An approximation; no real tokenizer is involved.
int estimate_tokens(std::string_view text);
// Cost of one history line including its newline.
int estimate_tokens(const HistoryEntry& entry);

// Longest suffix of `history` whose estimated size fits `budget_tokens`.
std::span<const HistoryEntry> truncate_history(std::span<const HistoryEntry> history,
                                               int budget_tokens);

struct ExpertMove {
  int index = 0;  // 1-based
  std::string token;
};

// "Expert 1: UP\nExpert 2: FIRE\nExpert 3: UP", ordered by index.
// Throws PromptError unless exactly n_experts moves are given.
std::string merge_expert_moves(std::vector<ExpertMove> moves, int n_experts);

struct PromptBundle {
  std::vector<llm::Message> messages;
  double temperature = 0.0;
  int max_tokens = 0;
  llm::Profile profile;

  int estimated_tokens() const;
  friend bool operator==(const PromptBundle&, const PromptBundle&) = default;
};

// Text templates with {placeholder} slots, plus per-strategy exemplars.
struct PromptLibrary {
  std::string agent_system;
  std::string agent_user;
  std::string planner_system;
  std::string planner_user;
  std::string vision_system;
  std::map<Strategy, std::string> exemplars;

  // Reads <dir>/templates/*.txt and <dir>/exemplars/<strategy>.txt.
  static PromptLibrary load(const std::filesystem::path& data_dir);
};

std::filesystem::path default_data_dir();

// Replaces every {name}; throws PromptError for an unknown or unbalanced slot.
std::string render_template(std::string_view tmpl, const std::map<std::string, std::string>& values);

struct AgentInputs {
  const scene::SceneDescription* scene = nullptr;
  std::span<const HistoryEntry> history;
  std::span<const WalkthroughStep> walkthrough;
  std::optional<std::string> plan;
  std::optional<std::vector<ExpertMove>> expert_moves;
};

// Agent (or Expert, via `profile`) prompt. The plan must be present exactly for
// Plan and KLevels, expert moves exactly for KLevels.
PromptBundle assemble_agent_prompt(const PromptLibrary& lib, const StrategyConfig& cfg,
                                   const AgentInputs& in, llm::Profile profile = llm::Profile::agent());

PromptBundle assemble_planner_prompt(const PromptLibrary& lib, const StrategyConfig& cfg,
                                     std::span<const WalkthroughStep> walkthrough,
                                     const scene::SceneDescription& scene,
                                     std::span<const HistoryEntry> history);

PromptBundle assemble_vision_prompt(const PromptLibrary& lib, const scene::SceneDescription& scene);

}  // namespace llmdoom::prompt
