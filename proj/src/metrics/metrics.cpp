#include "llmdoom/metrics/metrics.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace llmdoom::metrics {

using orchestrator::Outcome;

namespace {

bool is_segment_room(RoomLabel r) { return r != RoomLabel::None && r != RoomLabel::Hall; }

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad number in CSV: '" + std::string(s) + "'");
  }
  return v;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::vector<std::string>> csv_rows(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      row.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quote in CSV");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string opt_csv(std::optional<double> v) { return v ? shortest(*v) : "inf"; }

std::optional<double> opt_parse(const std::string& s) {
  if (s == "inf") return std::nullopt;
  return parse_double(s);
}

std::string percent(double v) {
  const double r = std::round(v);
  if (std::abs(v - r) < 1e-9) return shortest(r) + "%";
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(1);
  ss << v << '%';
  return ss.str();
}

}  // namespace

std::vector<Span> segment_trace(const orchestrator::Trial& trial) {
  std::vector<Span> spans;
  RoomLabel current = RoomLabel::A;
  for (const auto& rec : trial.frames) {
    if (is_segment_room(rec.room)) current = rec.room;
    if (!spans.empty() && spans.back().room == current && spans.back().end == rec.frame) {
      spans.back().end = rec.frame + 1;
    } else {
      spans.push_back({current, rec.frame, rec.frame + 1});
    }
  }
  return spans;
}

std::int64_t TrialSummary::frames_in(RoomLabel room) const {
  const auto it = frames.find(room);
  return it == frames.end() ? 0 : it->second;
}

TrialSummary summarize_trial(const orchestrator::Trial& trial) {
  TrialSummary s;
  s.outcome = trial.outcome;
  for (const auto& span : segment_trace(trial)) s.frames[span.room] += span.length();
  return s;
}

void MetricsConfig::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be a finite value >= 0");
  if (segments.empty()) throw std::invalid_argument("at least one segment is required");
}

namespace {

std::optional<double> mean_over_visits(std::span<const TrialSummary> trials, RoomLabel room, double death_penalty) {
  double total = 0.0;
  int visits = 0;
  for (const auto& t : trials) {
    if (!t.visited(room)) continue;
    total += static_cast<double>(t.frames_in(room)) + (t.died() ? death_penalty : 0.0);
    ++visits;
  }
  if (visits == 0) return std::nullopt;
  return total / visits;
}

}  // namespace

std::optional<double> compute_pmat(std::span<const TrialSummary> trials, RoomLabel room, const MetricsConfig&) {
  return mean_over_visits(trials, room, 0.0);
}

std::optional<double> compute_dpmat(std::span<const TrialSummary> trials, RoomLabel room, const MetricsConfig& cfg) {
  return mean_over_visits(trials, room, cfg.lambda);
}

SegmentReport summarize(std::span<const TrialSummary> trials, const MetricsConfig& cfg, std::string label) {
  cfg.validate();
  SegmentReport r;
  r.label = std::move(label);
  r.trials = static_cast<int>(trials.size());
  for (const auto room : cfg.segments) {
    SegmentStats s;
    s.room = room;
    s.pmat = compute_pmat(trials, room, cfg);
    s.dpmat = compute_dpmat(trials, room, cfg);
    for (const auto& t : trials) s.visits += t.visited(room) ? 1 : 0;
    r.segments.push_back(s);
  }
  int deaths = 0;
  int timeouts = 0;
  for (const auto& t : trials) {
    deaths += t.outcome == Outcome::Died ? 1 : 0;
    timeouts += t.outcome == Outcome::TimedOut ? 1 : 0;
    r.finish = r.finish || t.outcome == Outcome::Finished;
  }
  if (!trials.empty()) {
    r.deaths_pct = 100.0 * deaths / static_cast<double>(trials.size());
    r.timeouts_pct = 100.0 * timeouts / static_cast<double>(trials.size());
  }
  return r;
}

std::string format_value(std::optional<double> v) {
  if (!v) return "inf";
  const double r = std::round(*v);
  if (std::abs(*v - r) < 1e-9) return shortest(r == 0.0 ? 0.0 : r);
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(1);
  ss << *v;
  return ss.str();
}

std::string render_row(const SegmentReport& r) {
  std::string row = r.label;
  for (const auto& s : r.segments) row += " | " + format_value(s.pmat) + "/" + format_value(s.dpmat);
  row += " | " + percent(r.deaths_pct) + " | " + percent(r.timeouts_pct) + " | " + (r.finish ? "Yes" : "No");
  return row;
}

std::string render_table(std::span<const SegmentReport> reports) {
  std::string out = "Strategy";
  if (!reports.empty()) {
    for (const auto& s : reports.front().segments) out += " | " + std::string(sim::to_string(s.room));
  }
  out += " | Deaths | Timeouts | Finish\n";
  for (const auto& r : reports) out += render_row(r) + '\n';
  return out;
}

std::string render_csv(std::span<const SegmentReport> reports) {
  std::string out = "strategy,trials";
  const std::vector<SegmentStats> none;
  const auto& first = reports.empty() ? none : reports.front().segments;
  for (const auto& s : first) {
    const std::string room(sim::to_string(s.room));
    out += "," + room + "_pmat," + room + "_dpmat," + room + "_visits";
  }
  out += ",deaths_pct,timeouts_pct,finish\n";
  for (const auto& r : reports) {
    out += csv_field(r.label) + "," + std::to_string(r.trials);
    for (const auto& s : r.segments) {
      out += "," + opt_csv(s.pmat) + "," + opt_csv(s.dpmat) + "," + std::to_string(s.visits);
    }
    out += "," + shortest(r.deaths_pct) + "," + shortest(r.timeouts_pct) + "," + (r.finish ? "yes" : "no") + "\n";
  }
  return out;
}

std::vector<SegmentReport> parse_csv(std::string_view csv) {
  const auto rows = csv_rows(csv);
  if (rows.empty()) throw std::invalid_argument("CSV has no header");
  const auto& header = rows.front();
  if (header.size() < 5 || (header.size() - 5) % 3 != 0 || header[0] != "strategy" || header[1] != "trials") {
    throw std::invalid_argument("unexpected CSV header");
  }
  std::vector<RoomLabel> rooms;
  for (std::size_t i = 2; i + 3 < header.size(); i += 3) {
    const auto name = header[i].substr(0, header[i].find('_'));
    const auto room = sim::parse_room_label(name);
    if (!room) throw std::invalid_argument("unknown room column '" + header[i] + "'");
    rooms.push_back(*room);
  }
  std::vector<SegmentReport> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size()) throw std::invalid_argument("CSV row " + std::to_string(r + 1) + " has wrong width");
    SegmentReport rep;
    rep.label = row[0];
    rep.trials = static_cast<int>(parse_double(row[1]));
    for (std::size_t k = 0; k < rooms.size(); ++k) {
      const std::size_t c = 2 + 3 * k;
      rep.segments.push_back({rooms[k], opt_parse(row[c]), opt_parse(row[c + 1]),
                              static_cast<int>(parse_double(row[c + 2]))});
    }
    const std::size_t tail = 2 + 3 * rooms.size();
    rep.deaths_pct = parse_double(row[tail]);
    rep.timeouts_pct = parse_double(row[tail + 1]);
    if (row[tail + 2] != "yes" && row[tail + 2] != "no") throw std::invalid_argument("finish must be yes or no");
    rep.finish = row[tail + 2] == "yes";
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace llmdoom::metrics
