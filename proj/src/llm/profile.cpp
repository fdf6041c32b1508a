#include "llmdoom/llm/profile.hpp"

#include <charconv>

namespace llmdoom::llm {

std::string Profile::label() const {
  switch (kind) {
    case ProfileKind::Agent: return "Agent";
    case ProfileKind::Planner: return "Planner";
    case ProfileKind::Expert: return "Expert" + std::to_string(expert_index);
    case ProfileKind::Vision: break;
  }
  return "Vision";
}

std::optional<Profile> Profile::parse(std::string_view label) {
  if (label == "Agent") return agent();
  if (label == "Planner") return planner();
  if (label == "Vision") return vision();
  if (label.starts_with("Expert")) {
    int index = 0;
    const auto digits = label.substr(6);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && index >= 1) return expert(index);
  }
  return std::nullopt;
}

SamplingParams sampling_for(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::Agent:
    case ProfileKind::Expert: return {0.9, 25};
    case ProfileKind::Planner: return {0.1, 150};
    case ProfileKind::Vision: break;
  }
  return {0.1, 2880};
}

}  // namespace llmdoom::llm
