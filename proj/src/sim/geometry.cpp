#include "llmdoom/sim/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace llmdoom::sim {

double normalize_angle(double angle_deg) {
  double a = std::fmod(angle_deg, 360.0);
  if (a < 0.0) a += 360.0;
  if (a >= 360.0) a -= 360.0;
  return a;
}

Vec2 heading(double angle_deg) {
  const double a = normalize_angle(angle_deg);
  // Exact axis directions keep axis-aligned motion free of 1e-17 drift.
  if (a == 0.0) return {1.0, 0.0};
  if (a == 90.0) return {0.0, -1.0};
  if (a == 180.0) return {-1.0, 0.0};
  if (a == 270.0) return {0.0, 1.0};
  const double r = a * std::numbers::pi / 180.0;
  return {std::cos(r), -std::sin(r)};
}

double relative_bearing(Vec2 from, double facing_deg, Vec2 target) {
  const Vec2 d = target - from;
  if (d.x == 0.0 && d.y == 0.0) return 0.0;
  const double world_deg = std::atan2(-d.y, d.x) * 180.0 / std::numbers::pi;
  double rel = world_deg - facing_deg;
  rel = std::fmod(rel, 360.0);
  if (rel > 180.0) rel -= 360.0;
  if (rel <= -180.0) rel += 360.0;
  return rel;
}

void traverse_cells(Vec2 a, Vec2 b, const std::function<bool(Cell)>& visit) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  Cell cell = cell_of(a);
  const Cell end = cell_of(b);
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const int step_x = dx > 0 ? 1 : (dx < 0 ? -1 : 0);
  const int step_y = dy > 0 ? 1 : (dy < 0 ? -1 : 0);
  double t_max_x = dx > 0 ? (cell.x + 1 - a.x) / dx : (dx < 0 ? (a.x - cell.x) / -dx : inf);
  double t_max_y = dy > 0 ? (cell.y + 1 - a.y) / dy : (dy < 0 ? (a.y - cell.y) / -dy : inf);
  const double t_delta_x = dx != 0 ? 1.0 / std::abs(dx) : inf;
  const double t_delta_y = dy != 0 ? 1.0 / std::abs(dy) : inf;

  while (true) {
    if (!visit(cell)) return;
    if (cell == end) return;
    const double t = std::min(t_max_x, t_max_y);
    if (t > 1.0) return;
    if (t_max_x < t_max_y) {
      cell.x += step_x;
      t_max_x += t_delta_x;
    } else if (t_max_y < t_max_x) {
      cell.y += step_y;
      t_max_y += t_delta_y;
    } else {
      // Passing exactly through a lattice corner touches neither side cell.
      cell.x += step_x;
      cell.y += step_y;
      t_max_x += t_delta_x;
      t_max_y += t_delta_y;
    }
  }
}

bool line_of_sight(const TileMap& map, Vec2 a, Vec2 b) {
  bool clear = true;
  traverse_cells(a, b, [&](Cell c) {
    if (is_opaque(map.at(c))) clear = false;
    return clear;
  });
  return clear;
}

bool line_of_sight_to_cell(const TileMap& map, Vec2 from, Cell target) {
  bool clear = true;
  traverse_cells(from, center_of(target), [&](Cell c) {
    if (c == target) return false;
    if (is_opaque(map.at(c))) clear = false;
    return clear;
  });
  return clear;
}

RoomLabel room_of(const TileMap& map, Vec2 pos) { return map.label_at(cell_of(pos)); }

double ray_distance(const TileMap& map, Vec2 origin, Vec2 dir, double max_range,
                    const std::function<bool(CellKind)>& stop) {
  const Vec2 end = origin + dir * max_range;
  double hit = max_range;
  // Entry parameter of each visited cell along the segment, in [0, 1].
  const auto entry_t = [&](Cell c) {
    double t = 0.0;
    if (dir.x > 0) t = std::max(t, (c.x - origin.x) / (end.x - origin.x));
    if (dir.x < 0) t = std::max(t, (c.x + 1 - origin.x) / (end.x - origin.x));
    if (dir.y > 0) t = std::max(t, (c.y - origin.y) / (end.y - origin.y));
    if (dir.y < 0) t = std::max(t, (c.y + 1 - origin.y) / (end.y - origin.y));
    return std::clamp(t, 0.0, 1.0);
  };
  traverse_cells(origin, end, [&](Cell c) {
    if (stop(map.at(c))) {
      hit = entry_t(c) * max_range;
      return false;
    }
    return true;
  });
  return hit;
}

std::optional<double> ray_circle(Vec2 origin, Vec2 dir, Vec2 center, double radius) {
  const Vec2 f = origin - center;
  const double b = f.dot(dir);
  const double c = f.dot(f) - radius * radius;
  const double disc = b * b - c;
  if (disc < 0.0) return std::nullopt;
  const double root = std::sqrt(disc);
  const double t_far = -b + root;
  if (t_far < 0.0) return std::nullopt;
  return std::max(-b - root, 0.0);
}

bool circle_hits_solid(const TileMap& map, Vec2 p, double radius) {
  const int x0 = static_cast<int>(std::floor(p.x - radius));
  const int x1 = static_cast<int>(std::floor(p.x + radius));
  const int y0 = static_cast<int>(std::floor(p.y - radius));
  const int y1 = static_cast<int>(std::floor(p.y + radius));
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      if (!is_solid(map.at({x, y}))) continue;
      const double cx = std::clamp(p.x, static_cast<double>(x), static_cast<double>(x + 1));
      const double cy = std::clamp(p.y, static_cast<double>(y), static_cast<double>(y + 1));
      const double ddx = p.x - cx;
      const double ddy = p.y - cy;
      if (ddx * ddx + ddy * ddy < radius * radius) return true;
    }
  }
  return false;
}

}  // namespace llmdoom::sim
