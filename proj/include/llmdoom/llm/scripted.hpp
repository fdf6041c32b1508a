#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "llmdoom/scene/scene.hpp"

namespace llmdoom::llm {

// What the rule-based player reads out of an Agent or Expert prompt.
struct PolicyInput {
  std::optional<scene::Observation> observation;  // nullopt when the State section is unusable
  std::vector<std::string> plan_steps;            // step text without the "N." prefix
  std::vector<std::string> recent_actions;        // canonical tokens, oldest first
};

// Parses the live part of a prompt (after "Play begins here!").
PolicyInput parse_agent_prompt(std::string_view user_content);

// Priority rules, first match wins:
//  1. enemy at centre: FIRE
//  2. enemy left/right: turn toward it; if the last action was the opposite
//     turn, FIRE when it is within reach, otherwise UP
//  3. hurt with no enemy in view (and not standing in acid): RIGHT
//  4. closed door or switch within reach: USE
//  5. blocked last tick: STRAFE LEFT, unless that was the last action
//  6. first plan step that names a visible target: UP when centred, else turn
//     toward it (UP instead when the last action was the opposite turn);
//     a step that says "turn LEFT/RIGHT" yields that turn
//  7. otherwise UP
// Returns WAIT when the observation is missing.
std::string scripted_policy(const PolicyInput& input);

// Numbered plan built from the State section of a Planner prompt.
std::string scripted_plan(std::string_view planner_user_content);

}  // namespace llmdoom::llm
