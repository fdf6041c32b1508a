#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>

#include "llmdoom/orchestrator/orchestrator.hpp"

namespace llmdoom::trace {

inline constexpr int kTraceVersion = 1;

// Structured parse failure; line() is 1-based, 0 when not tied to a line.
class TraceError : public std::runtime_error {
 public:
  TraceError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct TraceHeader {
  int version = kTraceVersion;
  std::string strategy;                       // grouping key for reports
  std::map<std::string, std::string> config;  // flat snapshot, no secrets
  std::uint64_t seed = 0;
  std::string map_hash;  // FNV-1a 64 hex of the map file bytes
  friend bool operator==(const TraceHeader&, const TraceHeader&) = default;
};

struct TraceFile {
  TraceHeader header;
  orchestrator::Trial trial;
  friend bool operator==(const TraceFile&, const TraceFile&) = default;
};

// Config snapshot recorded in headers.
std::map<std::string, std::string> config_snapshot(const orchestrator::RunConfig& cfg);

// One JSON object per line: header, frame records, outcome.
void write_trace(std::ostream& out, const TraceFile& trace);
void write_trace_file(const std::filesystem::path& path, const TraceFile& trace);

TraceFile read_trace(std::istream& in);
TraceFile read_trace_file(const std::filesystem::path& path);

}  // namespace llmdoom::trace
