#include <algorithm>

#include "llmdoom/prompt/prompt.hpp"

namespace llmdoom::prompt {

int estimate_tokens(std::string_view text) {
  return static_cast<int>((text.size() + 3) / 4);
}

int estimate_tokens(const HistoryEntry& entry) { return estimate_tokens(entry.render() + '\n'); }

std::string HistoryEntry::render() const {
  std::string line = "[" + std::to_string(frame) + "] " + scene_summary + " -> " +
                     std::string(sim::canonical_token(action));
  if (!explanation.empty()) line += " | " + explanation;
  std::replace(line.begin(), line.end(), '\n', ' ');
  std::replace(line.begin(), line.end(), '\r', ' ');
  return line;
}

std::span<const HistoryEntry> truncate_history(std::span<const HistoryEntry> history, int budget_tokens) {
  std::size_t keep = 0;
  long long used = 0;
  while (keep < history.size()) {
    const int cost = estimate_tokens(history[history.size() - 1 - keep]);
    if (used + cost > budget_tokens) break;
    used += cost;
    ++keep;
  }
  return history.subspan(history.size() - keep);
}

std::string merge_expert_moves(std::vector<ExpertMove> moves, int n_experts) {
  if (static_cast<int>(moves.size()) != n_experts) {
    throw PromptError("expected " + std::to_string(n_experts) + " expert moves, got " +
                      std::to_string(moves.size()));
  }
  std::stable_sort(moves.begin(), moves.end(),
                   [](const ExpertMove& a, const ExpertMove& b) { return a.index < b.index; });
  std::string out;
  for (int i = 0; i < n_experts; ++i) {
    if (moves[static_cast<std::size_t>(i)].index != i + 1) {
      throw PromptError("expert indices must be 1.." + std::to_string(n_experts));
    }
    if (i > 0) out += '\n';
    out += "Expert " + std::to_string(i + 1) + ": " + moves[static_cast<std::size_t>(i)].token;
  }
  return out;
}

int PromptBundle::estimated_tokens() const {
  int total = 0;
  for (const auto& m : messages) total += estimate_tokens(m.content);
  return total;
}

}  // namespace llmdoom::prompt
