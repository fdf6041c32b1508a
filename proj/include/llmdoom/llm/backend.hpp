#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "llmdoom/llm/profile.hpp"

namespace llmdoom::llm {

// Raised when a completion could not be produced; callers fall back to WAIT.
class BackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BackendUnavailable : public BackendError {
 public:
  using BackendError::BackendError;
};

class ReplayExhausted : public BackendError {
 public:
  using BackendError::BackendError;
};

// Malformed request or configuration: a programming or setup error, not an outage.
class InvalidRequest : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CompletionRequest {
  std::vector<Message> messages;
  double temperature = 0.0;
  int max_tokens = 0;
  Profile profile;

  // Non-empty messages, leading system message, sampling equal to the profile table.
  void validate() const;
};

enum class BackendKind { Http, Scripted, Replay };

std::string_view to_string(BackendKind k);
std::optional<BackendKind> parse_backend_kind(std::string_view text);

struct BackendConfig {
  BackendKind kind = BackendKind::Scripted;
  std::string endpoint;  // e.g. http://127.0.0.1:8080/v1
  std::string model;
  std::string api_key_env = "LLM_API_KEY";
  double timeout_s = 120.0;
  int retries = 2;
  double retry_backoff_s = 2.0;
  std::filesystem::path replay_path;

  void validate() const;
};

class CompletionBackend {
 public:
  virtual ~CompletionBackend() = default;

  // Validates the request, then delegates. Safe to call from several threads.
  std::string complete(const CompletionRequest& req) {
    req.validate();
    return do_complete(req);
  }

 protected:
  virtual std::string do_complete(const CompletionRequest& req) = 0;
};

std::unique_ptr<CompletionBackend> make_backend(const BackendConfig& cfg);

// OpenAI-compatible chat completions client.
class HttpBackend final : public CompletionBackend {
 public:
  explicit HttpBackend(BackendConfig cfg);

 protected:
  std::string do_complete(const CompletionRequest& req) override;

 private:
  BackendConfig cfg_;
  std::string origin_;     // scheme://host[:port]
  std::string base_path_;  // path prefix before /chat/completions
};

// Request body as sent on the wire.
std::string chat_request_body(const std::string& model, const CompletionRequest& req);

// Deterministic stand-in for a model: a rule-based player, a templated planner,
// and an echoing vision profile.
class ScriptedBackend final : public CompletionBackend {
 protected:
  std::string do_complete(const CompletionRequest& req) override;
};

// Returns completions recorded in a trace, in order, per profile.
class ReplayBackend final : public CompletionBackend {
 public:
  explicit ReplayBackend(const std::filesystem::path& trace_path);
  ReplayBackend(const ReplayBackend&) = delete;
  ReplayBackend& operator=(const ReplayBackend&) = delete;
  ~ReplayBackend() override;

  std::size_t remaining(const Profile& profile) const;

 protected:
  std::string do_complete(const CompletionRequest& req) override;

 private:
  struct Queues;
  std::unique_ptr<Queues> queues_;
};

}  // namespace llmdoom::llm
