#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace llmdoom::llm {

enum class ProfileKind { Agent, Planner, Expert, Vision };

// Which role a completion call plays; experts are numbered from 1.
struct Profile {
  ProfileKind kind = ProfileKind::Agent;
  int expert_index = 0;

  static Profile agent() { return {ProfileKind::Agent, 0}; }
  static Profile planner() { return {ProfileKind::Planner, 0}; }
  static Profile expert(int index) { return {ProfileKind::Expert, index}; }
  static Profile vision() { return {ProfileKind::Vision, 0}; }

  // "Agent", "Planner", "Expert2", "Vision".
  std::string label() const;
  static std::optional<Profile> parse(std::string_view label);

  friend bool operator==(const Profile&, const Profile&) = default;
};

struct SamplingParams {
  double temperature = 0.0;
  int max_tokens = 0;
  friend bool operator==(const SamplingParams&, const SamplingParams&) = default;
};

// Agent and Experts 0.9 / 25, Planner 0.1 / 150, Vision 0.1 / 2880.
SamplingParams sampling_for(ProfileKind kind);

struct Message {
  std::string role;
  std::string content;
  friend bool operator==(const Message&, const Message&) = default;
};

}  // namespace llmdoom::llm
