#include <deque>
#include <fstream>
#include <map>
#include <mutex>

#include <json.hpp>

#include "llmdoom/llm/backend.hpp"

namespace llmdoom::llm {

struct ReplayBackend::Queues {
  mutable std::mutex mu;
  std::map<std::string, std::deque<std::string>> by_profile;
};

ReplayBackend::ReplayBackend(const std::filesystem::path& trace_path) : queues_(std::make_unique<Queues>()) {
  std::ifstream in(trace_path);
  if (!in) throw InvalidRequest("cannot open replay trace " + trace_path.string());
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
      throw InvalidRequest("replay trace line " + std::to_string(line_no) + " is not valid JSON");
    }
    if (record.value("type", "") != "frame" || !record.contains("calls")) continue;
    for (const auto& call : record["calls"]) {
      queues_->by_profile[call.at("profile").get<std::string>()].push_back(call.at("completion").get<std::string>());
    }
  }
}

ReplayBackend::~ReplayBackend() = default;

std::size_t ReplayBackend::remaining(const Profile& profile) const {
  std::lock_guard lock(queues_->mu);
  const auto it = queues_->by_profile.find(profile.label());
  return it == queues_->by_profile.end() ? 0 : it->second.size();
}

std::string ReplayBackend::do_complete(const CompletionRequest& req) {
  std::lock_guard lock(queues_->mu);
  auto& queue = queues_->by_profile[req.profile.label()];
  if (queue.empty()) throw ReplayExhausted("no recorded completions left for " + req.profile.label());
  std::string out = std::move(queue.front());
  queue.pop_front();
  return out;
}

}  // namespace llmdoom::llm
