#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "llmdoom/llm/backend.hpp"

namespace llmdoom::llm {

using nlohmann::json;

std::string chat_request_body(const std::string& model, const CompletionRequest& req) {
  json messages = json::array();
  for (const auto& m : req.messages) messages.push_back({{"role", m.role}, {"content", m.content}});
  return json{{"model", model}, {"messages", std::move(messages)}, {"temperature", req.temperature},
              {"max_tokens", req.max_tokens}}
      .dump();
}

HttpBackend::HttpBackend(BackendConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  const auto scheme_end = cfg_.endpoint.find("://");
  if (scheme_end == std::string::npos) throw InvalidRequest("endpoint needs a scheme: " + cfg_.endpoint);
  const auto path_start = cfg_.endpoint.find('/', scheme_end + 3);
  origin_ = cfg_.endpoint.substr(0, path_start);
  base_path_ = path_start == std::string::npos ? "" : cfg_.endpoint.substr(path_start);
  while (base_path_.ends_with('/')) base_path_.pop_back();
}

std::string HttpBackend::do_complete(const CompletionRequest& req) {
  const std::string body = chat_request_body(cfg_.model, req);
  const char* key = std::getenv(cfg_.api_key_env.c_str());
  const httplib::Headers headers{{"Authorization", "Bearer " + std::string(key ? key : "")}};

  const auto timeout = std::chrono::duration<double>(cfg_.timeout_s);
  const auto timeout_us = std::chrono::duration_cast<std::chrono::microseconds>(timeout);
  const auto sec = static_cast<time_t>(timeout_us.count() / 1000000);
  const auto usec = static_cast<time_t>(timeout_us.count() % 1000000);

  std::string last_error;
  for (int attempt = 0; attempt <= cfg_.retries; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(std::chrono::duration<double>(cfg_.retry_backoff_s));
    httplib::Client client(origin_);
    client.set_connection_timeout(sec, usec);
    client.set_read_timeout(sec, usec);
    client.set_write_timeout(sec, usec);
    auto res = client.Post(base_path_ + "/chat/completions", headers, body, "application/json");
    if (!res) {
      last_error = "request failed: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) {
      last_error = "HTTP status " + std::to_string(res->status);
      continue;
    }
    try {
      const auto reply = json::parse(res->body);
      const auto& content = reply.at("choices").at(0).at("message").at("content");
      if (content.is_string()) return content.get<std::string>();
      last_error = "completion content is not a string";
    } catch (const json::exception& e) {
      last_error = std::string("malformed completion body: ") + e.what();
    }
  }
  throw BackendUnavailable(last_error + " (after " + std::to_string(cfg_.retries) + " retries)");
}

}  // namespace llmdoom::llm
