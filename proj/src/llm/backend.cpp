#include "llmdoom/llm/backend.hpp"

namespace llmdoom::llm {

std::string_view to_string(BackendKind k) {
  switch (k) {
    case BackendKind::Http: return "http";
    case BackendKind::Replay: return "replay";
    case BackendKind::Scripted: break;
  }
  return "scripted";
}

std::optional<BackendKind> parse_backend_kind(std::string_view text) {
  if (text == "http") return BackendKind::Http;
  if (text == "scripted") return BackendKind::Scripted;
  if (text == "replay") return BackendKind::Replay;
  return std::nullopt;
}

void CompletionRequest::validate() const {
  if (messages.empty()) throw InvalidRequest("completion request has no messages");
  if (messages.front().role != "system") throw InvalidRequest("first message must have role system");
  if (temperature < 0.0 || temperature > 2.0) throw InvalidRequest("temperature outside [0, 2]");
  if (max_tokens <= 0) throw InvalidRequest("max_tokens must be positive");
  if (profile.kind == ProfileKind::Expert && profile.expert_index < 1) {
    throw InvalidRequest("expert index must be 1 or more");
  }
  const auto expected = sampling_for(profile.kind);
  if (temperature != expected.temperature || max_tokens != expected.max_tokens) {
    throw InvalidRequest("sampling parameters do not match the " + profile.label() + " profile");
  }
}

void BackendConfig::validate() const {
  if (timeout_s <= 0.0) throw InvalidRequest("timeout must be positive");
  if (retries < 0) throw InvalidRequest("retries must be non-negative");
  if (retry_backoff_s < 0.0) throw InvalidRequest("retry backoff must be non-negative");
  switch (kind) {
    case BackendKind::Http:
      if (endpoint.empty() || model.empty()) throw InvalidRequest("http backend needs an endpoint and a model");
      break;
    case BackendKind::Replay:
      if (replay_path.empty()) throw InvalidRequest("replay backend needs a trace path");
      break;
    case BackendKind::Scripted: break;
  }
}

std::unique_ptr<CompletionBackend> make_backend(const BackendConfig& cfg) {
  cfg.validate();
  switch (cfg.kind) {
    case BackendKind::Http: return std::make_unique<HttpBackend>(cfg);
    case BackendKind::Replay: return std::make_unique<ReplayBackend>(cfg.replay_path);
    case BackendKind::Scripted: break;
  }
  return std::make_unique<ScriptedBackend>();
}

}  // namespace llmdoom::llm
