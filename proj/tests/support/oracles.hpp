#pragma once

// Independent reference implementations used to check the library.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "llmdoom/llm/backend.hpp"
#include "llmdoom/orchestrator/orchestrator.hpp"
#include "llmdoom/sim/map.hpp"

namespace oracle {

using llmdoom::sim::CellKind;
using llmdoom::sim::RoomLabel;
using llmdoom::sim::TileMap;
using llmdoom::sim::Vec2;

inline CellKind kind_at(const TileMap& m, double x, double y) {
  return m.at({static_cast<int>(std::floor(x)), static_cast<int>(std::floor(y))});
}

inline bool opaque(CellKind k) { return k == CellKind::Wall || k == CellKind::DoorClosed; }

// Distance from the segment a-b to the nearest lattice point.
inline double corner_clearance(Vec2 a, Vec2 b) {
  double best = 1e9;
  const int x0 = static_cast<int>(std::floor(std::min(a.x, b.x))) - 1;
  const int x1 = static_cast<int>(std::floor(std::max(a.x, b.x))) + 2;
  const int y0 = static_cast<int>(std::floor(std::min(a.y, b.y))) - 1;
  const int y1 = static_cast<int>(std::floor(std::max(a.y, b.y))) + 2;
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      double t = len2 > 0 ? ((x - a.x) * dx + (y - a.y) * dy) / len2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      best = std::min(best, std::hypot(a.x + t * dx - x, a.y + t * dy - y));
    }
  }
  return best;
}

// Dense sampling along the segment. Unreliable when the segment grazes a
// lattice corner, so callers skip those cases via corner_clearance.
inline bool sampled_los(const TileMap& m, Vec2 a, Vec2 b, double step = 1e-3) {
  const double len = std::hypot(b.x - a.x, b.y - a.y);
  const int n = std::max(1, static_cast<int>(std::ceil(len / step)));
  for (int i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    if (opaque(kind_at(m, a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)))) return false;
  }
  return true;
}

// Same, but the target cell itself never blocks.
inline bool sampled_los_to_cell(const TileMap& m, Vec2 a, int cx, int cy, double step = 1e-3) {
  const Vec2 b{cx + 0.5, cy + 0.5};
  const double len = std::hypot(b.x - a.x, b.y - a.y);
  const int n = std::max(1, static_cast<int>(std::ceil(len / step)));
  for (int i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    const double x = a.x + t * (b.x - a.x);
    const double y = a.y + t * (b.y - a.y);
    if (static_cast<int>(std::floor(x)) == cx && static_cast<int>(std::floor(y)) == cy) return true;
    if (opaque(kind_at(m, x, y))) return false;
  }
  return true;
}

// Relative angle of `target` seen from `from` facing `facing_deg`, in (-180, 180], left positive.
inline double bearing_deg(Vec2 from, double facing_deg, Vec2 target) {
  const double world = std::atan2(-(target.y - from.y), target.x - from.x) * 180.0 / std::numbers::pi;
  double rel = world - facing_deg;
  while (rel > 180.0) rel -= 360.0;
  while (rel <= -180.0) rel += 360.0;
  return rel;
}

// Action normalisation written out longhand.
inline const std::vector<std::string>& canonical_tokens() {
  static const std::vector<std::string> tokens = {
      "UP", "DOWN", "LEFT", "RIGHT", "STRAFE LEFT", "STRAFE RIGHT", "FIRE", "USE", "WAIT",
      "SPEED", "1", "2", "3", "4", "5", "6", "7"};
  return tokens;
}

inline std::string normalise(const std::string& text) {
  std::string line = text.substr(0, text.find('\n'));
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  auto is_punct = [](char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; };
  while (true) {
    while (!line.empty() && is_space(line.front())) line.erase(line.begin());
    while (!line.empty() && is_space(line.back())) line.pop_back();
    if (!line.empty() && is_punct(line.back())) {
      line.pop_back();
      continue;
    }
    break;
  }
  for (auto& c : line) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return line;
}

// One synthetic trial as a per-frame room sequence.
struct FrameTrial {
  std::vector<RoomLabel> rooms;
  bool died = false;
  bool finished = false;
};

// Frames credited to `room`, walking frames one at a time with the
// last-labeled-room rule.
inline std::int64_t frames_in(const FrameTrial& t, RoomLabel room) {
  RoomLabel current = RoomLabel::A;
  std::int64_t n = 0;
  for (const auto r : t.rooms) {
    if (r == RoomLabel::A || r == RoomLabel::B || r == RoomLabel::C || r == RoomLabel::D) current = r;
    if (current == room) ++n;
  }
  return n;
}

// Direct evaluation of the per-room average, optionally death-weighted.
inline std::optional<double> brute_average(const std::vector<FrameTrial>& trials, RoomLabel room, double lambda) {
  double sum = 0.0;
  double visits = 0.0;
  for (const auto& t : trials) {
    const auto n = frames_in(t, room);
    if (n == 0) continue;
    sum += static_cast<double>(n) + lambda * (t.died ? 1.0 : 0.0);
    visits += 1.0;
  }
  if (visits == 0.0) return std::nullopt;
  return sum / visits;
}

inline llmdoom::orchestrator::Trial to_trial(const FrameTrial& ft) {
  using namespace llmdoom;
  orchestrator::Trial t;
  for (std::size_t i = 0; i < ft.rooms.size(); ++i) {
    orchestrator::FrameRecord r;
    r.frame = static_cast<std::int64_t>(i);
    r.room = ft.rooms[i];
    t.frames.push_back(r);
    const bool labeled = r.room != RoomLabel::None && r.room != RoomLabel::Hall;
    if (labeled && (t.room_entries.empty() || t.room_entries.back().room != r.room)) {
      t.room_entries.push_back({r.room, r.frame});
    }
  }
  if (ft.finished && !t.frames.empty()) {
    t.frames.back().events.push_back({sim::EventKind::SwitchActivated, 0, -1});
  }
  t.outcome = ft.died ? orchestrator::Outcome::Died
                      : (ft.finished ? orchestrator::Outcome::Finished : orchestrator::Outcome::TimedOut);
  return t;
}

// Trial whose frames run through the given rooms for the given counts.
inline FrameTrial segments(std::initializer_list<std::pair<RoomLabel, int>> parts, bool died, bool finished) {
  FrameTrial t;
  for (const auto& [room, n] : parts) t.rooms.insert(t.rooms.end(), static_cast<std::size_t>(n), room);
  t.died = died;
  t.finished = finished;
  return t;
}

// Backend that answers every call with a fixed string.
class ConstantBackend final : public llmdoom::llm::CompletionBackend {
 public:
  explicit ConstantBackend(std::string reply) : reply_(std::move(reply)) {}

 protected:
  std::string do_complete(const llmdoom::llm::CompletionRequest&) override { return reply_; }

 private:
  std::string reply_;
};

}  // namespace oracle
