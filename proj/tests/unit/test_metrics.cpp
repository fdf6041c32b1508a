#include <doctest.h>

#include <random>

#include "llmdoom/metrics/metrics.hpp"
#include "oracles.hpp"

using namespace llmdoom;
using metrics::Span;
using orchestrator::Outcome;
using sim::RoomLabel;

namespace {

metrics::TrialSummary summary(std::map<RoomLabel, std::int64_t> frames, Outcome o) {
  metrics::TrialSummary s;
  s.frames = std::move(frames);
  s.outcome = o;
  return s;
}

const metrics::MetricsConfig kDefault{};

}  // namespace

TEST_CASE("segmentation attributes hall frames to the last labeled room") {
  using R = RoomLabel;
  CHECK(metrics::segment_trace(oracle::to_trial(oracle::segments({{R::A, 50}}, false, false))) ==
        std::vector<Span>{{R::A, 0, 50}});
  CHECK(metrics::segment_trace(oracle::to_trial(
            oracle::segments({{R::A, 10}, {R::Hall, 5}, {R::B, 20}, {R::None, 2}, {R::A, 3}}, false, false))) ==
        std::vector<Span>{{R::A, 0, 15}, {R::B, 15, 37}, {R::A, 37, 40}});
  CHECK(metrics::segment_trace(oracle::to_trial(oracle::segments({{R::A, 100}, {R::B, 150}, {R::C, 30}}, false, false))) ==
        std::vector<Span>{{R::A, 0, 100}, {R::B, 100, 250}, {R::C, 250, 280}});
  // Leading hall frames count to A.
  const auto t = metrics::summarize_trial(oracle::to_trial(oracle::segments({{R::Hall, 4}, {R::B, 6}}, false, false)));
  CHECK(t.frames_in(R::A) == 4);
  CHECK(t.frames_in(R::B) == 6);
}

TEST_CASE("pmat and dpmat examples") {
  const metrics::TrialSummary human[] = {summary({{RoomLabel::D, 104}}, Outcome::Finished)};
  CHECK(metrics::compute_pmat(human, RoomLabel::D, kDefault) == 104.0);
  CHECK_FALSE(metrics::compute_pmat(human, RoomLabel::C, kDefault).has_value());

  const metrics::TrialSummary two[] = {summary({{RoomLabel::B, 120}}, Outcome::TimedOut),
                                       summary({{RoomLabel::B, 80}}, Outcome::Died)};
  CHECK(metrics::compute_pmat(two, RoomLabel::B, kDefault) == 100.0);
  CHECK(metrics::compute_dpmat(two, RoomLabel::B, kDefault) == 600.0);

  const metrics::TrialSummary died[] = {summary({{RoomLabel::D, 47}}, Outcome::Died)};
  CHECK(metrics::compute_dpmat(died, RoomLabel::D, kDefault) == 1047.0);

  const metrics::TrialSummary alive[] = {summary({{RoomLabel::A, 3}}, Outcome::TimedOut),
                                         summary({{RoomLabel::A, 8}}, Outcome::Finished)};
  CHECK(metrics::compute_dpmat(alive, RoomLabel::A, kDefault) == metrics::compute_pmat(alive, RoomLabel::A, kDefault));
}

TEST_CASE("dpmat exceeds pmat by lambda times the dying share") {
  std::mt19937_64 rng(9);
  for (int set = 0; set < 100; ++set) {
    std::vector<metrics::TrialSummary> trials;
    int visiting = 0, dying = 0;
    for (int i = 0, n = 1 + static_cast<int>(rng() % 8); i < n; ++i) {
      const auto frames = static_cast<std::int64_t>(rng() % 3 == 0 ? 0 : rng() % 500);
      const auto o = static_cast<Outcome>(rng() % 3);
      trials.push_back(summary({{RoomLabel::C, frames}}, o));
      visiting += frames > 0;
      dying += frames > 0 && o == Outcome::Died;
    }
    metrics::MetricsConfig cfg;
    cfg.lambda = 250.0;
    const auto pm = metrics::compute_pmat(trials, RoomLabel::C, cfg);
    const auto dp = metrics::compute_dpmat(trials, RoomLabel::C, cfg);
    REQUIRE(pm.has_value() == (visiting > 0));
    if (pm) CHECK(*dp - *pm == doctest::Approx(250.0 * dying / visiting).epsilon(1e-12));
  }
}

TEST_CASE("summary percentages and finish flag") {
  std::vector<metrics::TrialSummary> naive;
  for (int i = 0; i < 10; ++i) naive.push_back(summary({{RoomLabel::A, 100}}, i < 4 ? Outcome::Died : Outcome::TimedOut));
  const auto r = metrics::summarize(naive, kDefault, "Naive");
  CHECK(r.trials == 10);
  CHECK(r.deaths_pct == 40.0);
  CHECK(r.timeouts_pct == 60.0);
  CHECK_FALSE(r.finish);
  CHECK(metrics::render_row(r) == "Naive | 100/500 | inf/inf | inf/inf | inf/inf | 40% | 60% | No");

  const std::vector<metrics::TrialSummary> done(3, summary({{RoomLabel::A, 7}}, Outcome::Finished));
  const auto d = metrics::summarize(done, kDefault, "Done");
  CHECK(d.deaths_pct == 0.0);
  CHECK(d.timeouts_pct == 0.0);
  CHECK(d.finish);
}

TEST_CASE("value formatting and table layout") {
  CHECK(metrics::format_value(std::nullopt) == "inf");
  CHECK(metrics::format_value(104.0) == "104");
  CHECK(metrics::format_value(100.25) == "100.2");
  CHECK(metrics::format_value(1047.0) == "1047");
  const std::vector<metrics::TrialSummary> human = {
      metrics::summarize_trial(oracle::to_trial(oracle::segments(
          {{RoomLabel::A, 78}, {RoomLabel::B, 108}, {RoomLabel::C, 158}, {RoomLabel::D, 104}}, false, true)))};
  const std::vector<metrics::SegmentReport> reports = {metrics::summarize(human, kDefault, "Human")};
  CHECK(metrics::render_table(reports) ==
        "Strategy | A | B | C | D | Deaths | Timeouts | Finish\n"
        "Human | 78/78 | 108/108 | 158/158 | 104/104 | 0% | 0% | Yes\n");
}

TEST_CASE("csv round-trips to an equal report") {
  std::mt19937_64 rng(4);
  std::vector<metrics::SegmentReport> reports;
  for (const char* label : {"Naive", "Plan, \"quoted\"", "K-Levels"}) {
    std::vector<metrics::TrialSummary> trials;
    for (int i = 0; i < 7; ++i) {
      trials.push_back(summary({{RoomLabel::A, static_cast<std::int64_t>(rng() % 300)},
                                {RoomLabel::B, static_cast<std::int64_t>(rng() % 3)}},
                               static_cast<Outcome>(rng() % 3)));
    }
    metrics::MetricsConfig cfg;
    cfg.lambda = 1000.0 / 3.0;
    reports.push_back(metrics::summarize(trials, cfg, label));
  }
  const auto csv = metrics::render_csv(reports);
  CHECK(csv.starts_with("strategy,trials,A_pmat,A_dpmat,A_visits,"));
  CHECK(metrics::parse_csv(csv) == reports);
}

TEST_CASE("metrics config validation") {
  metrics::MetricsConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.lambda = -1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
