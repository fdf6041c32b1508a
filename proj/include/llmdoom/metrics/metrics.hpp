#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "llmdoom/orchestrator/orchestrator.hpp"

namespace llmdoom::metrics {

using sim::RoomLabel;

// Half-open frame range [start, end) attributed to one room.
struct Span {
  RoomLabel room = RoomLabel::A;
  std::int64_t start = 0;
  std::int64_t end = 0;
  std::int64_t length() const { return end - start; }
  friend bool operator==(const Span&, const Span&) = default;
};

// Hall and doorway frames count toward the last labeled room entered (A
// before any labeled frame).
std::vector<Span> segment_trace(const orchestrator::Trial& trial);

// Per-trial input to the metrics: frames per room plus the outcome.
struct TrialSummary {
  std::map<RoomLabel, std::int64_t> frames;
  orchestrator::Outcome outcome = orchestrator::Outcome::TimedOut;

  std::int64_t frames_in(RoomLabel room) const;
  bool visited(RoomLabel room) const { return frames_in(room) > 0; }
  bool died() const { return outcome == orchestrator::Outcome::Died; }
};

TrialSummary summarize_trial(const orchestrator::Trial& trial);

struct MetricsConfig {
  double lambda = 1000.0;
  std::vector<RoomLabel> segments{RoomLabel::A, RoomLabel::B, RoomLabel::C, RoomLabel::D};
  void validate() const;  // throws std::invalid_argument
};

// Mean frames in `room` over the trials that visited it; nullopt if none did.
std::optional<double> compute_pmat(std::span<const TrialSummary> trials, RoomLabel room, const MetricsConfig& cfg);
// As compute_pmat, adding lambda for each visiting trial that ended in death.
std::optional<double> compute_dpmat(std::span<const TrialSummary> trials, RoomLabel room, const MetricsConfig& cfg);

struct SegmentStats {
  RoomLabel room = RoomLabel::A;
  std::optional<double> pmat;
  std::optional<double> dpmat;
  int visits = 0;
  friend bool operator==(const SegmentStats&, const SegmentStats&) = default;
};

struct SegmentReport {
  std::string label;  // row name
  int trials = 0;
  std::vector<SegmentStats> segments;
  double deaths_pct = 0.0;
  double timeouts_pct = 0.0;
  bool finish = false;  // any trial finished
  friend bool operator==(const SegmentReport&, const SegmentReport&) = default;
};

SegmentReport summarize(std::span<const TrialSummary> trials, const MetricsConfig& cfg, std::string label);

// Integers print bare, other values with one decimal; nullopt prints "inf".
std::string format_value(std::optional<double> v);

// "Strategy | A | B | C | D | Deaths | Timeouts | Finish" plus one row per report.
std::string render_table(std::span<const SegmentReport> reports);
std::string render_row(const SegmentReport& report);

// Full-precision CSV with a header line; parse_csv inverts it.
std::string render_csv(std::span<const SegmentReport> reports);
std::vector<SegmentReport> parse_csv(std::string_view csv);

}  // namespace llmdoom::metrics
