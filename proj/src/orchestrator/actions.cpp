#include <cctype>

#include "llmdoom/orchestrator/orchestrator.hpp"

namespace llmdoom::orchestrator {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

sim::Action parse_action(std::string_view completion) {
  std::string_view line = completion.substr(0, completion.find('\n'));
  line = trim(line);
  while (!line.empty() && std::ispunct(static_cast<unsigned char>(line.back()))) {
    line.remove_suffix(1);
    line = trim(line);
  }
  std::string token(line);
  for (auto& c : token) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (const auto a : sim::kAllActions) {
    if (sim::canonical_token(a) == token) return a;
  }
  return sim::Action::Wait;
}

std::vector<sim::PressInput> expand_action(sim::Action action) {
  if (action == sim::Action::Wait) return {std::nullopt, std::nullopt};
  if (sim::is_motion(action)) return {action, action, action};
  return {action};
}

}  // namespace llmdoom::orchestrator
