#include <algorithm>

#include "llmdoom/prompt/prompt.hpp"

namespace llmdoom::prompt {

namespace {

std::string join_history(std::span<const HistoryEntry> history) {
  std::string out;
  for (const auto& e : history) {
    if (!out.empty()) out += '\n';
    out += e.render();
  }
  return out;
}

std::string strip_trailing_newlines(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

// Renders the user template twice: once without history to size the fixed
// part, then with the longest history suffix that still fits.
PromptBundle build(const std::string& system, std::string_view user_template,
                   std::map<std::string, std::string> values, std::span<const HistoryEntry> history,
                   int history_budget, llm::Profile profile) {
  const auto sampling = llm::sampling_for(profile.kind);
  const int limit = kModelTokenLimit - sampling.max_tokens;

  values["history"] = "";
  const int fixed = estimate_tokens(system) + estimate_tokens(render_template(user_template, values));
  const int available = limit - fixed;
  if (available < 0) throw PromptError("prompt exceeds the token budget before any history");

  const auto kept = truncate_history(history, std::min(history_budget, available));
  values["history"] = join_history(kept);

  PromptBundle bundle;
  bundle.messages.push_back({"system", system});
  bundle.messages.push_back({"user", render_template(user_template, values)});
  bundle.temperature = sampling.temperature;
  bundle.max_tokens = sampling.max_tokens;
  bundle.profile = profile;
  if (bundle.estimated_tokens() > limit) throw PromptError("prompt exceeds the token budget");
  return bundle;
}

}  // namespace

PromptBundle assemble_agent_prompt(const PromptLibrary& lib, const StrategyConfig& cfg,
                                   const AgentInputs& in, llm::Profile profile) {
  if (profile.kind != llm::ProfileKind::Agent && profile.kind != llm::ProfileKind::Expert) {
    throw PromptError("agent prompts need the Agent or an Expert profile");
  }
  if (in.scene == nullptr) throw PromptError("agent prompt needs a scene");
  const bool is_expert = profile.kind == llm::ProfileKind::Expert;
  if (is_expert && !cfg.uses_experts()) throw PromptError("expert prompts exist only for klevels");
  if (cfg.uses_plan() != in.plan.has_value()) {
    throw PromptError(cfg.uses_plan() ? "strategy requires a plan" : "strategy takes no plan");
  }
  const bool wants_experts = cfg.uses_experts() && !is_expert;
  if (wants_experts != in.expert_moves.has_value()) {
    throw PromptError(wants_experts ? "strategy requires expert moves" : "expert moves not accepted here");
  }
  if (cfg.uses_walkthrough() && in.walkthrough.empty()) throw PromptError("strategy requires a walkthrough");

  // Experts see the plan-strategy examples: same inputs minus other experts.
  const Strategy exemplar_key = is_expert ? Strategy::Plan : cfg.strategy;
  const auto ex = lib.exemplars.find(exemplar_key);
  if (ex == lib.exemplars.end()) throw PromptError("no exemplars for strategy");

  std::map<std::string, std::string> values;
  values["exemplars"] = ex->second;
  values["walkthrough"] =
      cfg.uses_walkthrough() ? "Walkthrough:\n" + render_walkthrough(in.walkthrough) + "\n\n" : "";
  values["state"] = in.scene->text();
  values["plan"] = in.plan ? "Plan:\n" + strip_trailing_newlines(*in.plan) + "\n\n" : "";
  values["experts"] =
      in.expert_moves ? "Expert moves:\n" + merge_expert_moves(*in.expert_moves, cfg.n_experts) + "\n\n" : "";
  return build(lib.agent_system, lib.agent_user, std::move(values), in.history, cfg.history_budget_tokens,
               profile);
}

PromptBundle assemble_planner_prompt(const PromptLibrary& lib, const StrategyConfig& cfg,
                                     std::span<const WalkthroughStep> walkthrough,
                                     const scene::SceneDescription& scene,
                                     std::span<const HistoryEntry> history) {
  if (walkthrough.empty()) throw PromptError("planner prompt needs a walkthrough");
  std::map<std::string, std::string> values;
  values["walkthrough"] = render_walkthrough(walkthrough);
  values["state"] = scene.text();
  return build(lib.planner_system, lib.planner_user, std::move(values), history, cfg.history_budget_tokens,
               llm::Profile::planner());
}

PromptBundle assemble_vision_prompt(const PromptLibrary& lib, const scene::SceneDescription& scene) {
  const auto sampling = llm::sampling_for(llm::ProfileKind::Vision);
  PromptBundle bundle;
  bundle.messages.push_back({"system", lib.vision_system});
  bundle.messages.push_back({"user", scene.text()});
  bundle.temperature = sampling.temperature;
  bundle.max_tokens = sampling.max_tokens;
  bundle.profile = llm::Profile::vision();
  return bundle;
}

}  // namespace llmdoom::prompt
