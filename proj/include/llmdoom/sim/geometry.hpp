#pragma once

#include <functional>

#include "llmdoom/sim/map.hpp"

namespace llmdoom::sim {

// Unit heading for an angle in degrees: 0 = east, 90 = north (screen up).
Vec2 heading(double angle_deg);
double normalize_angle(double angle_deg);
// Signed angle of `target` relative to the facing direction, in (-180, 180].
// Positive means to the left.
double relative_bearing(Vec2 from, double facing_deg, Vec2 target);

// Visits every cell the segment a->b passes through, in order, starting with
// the cell containing `a`. Stops early when `visit` returns false.
void traverse_cells(Vec2 a, Vec2 b, const std::function<bool(Cell)>& visit);

// True iff the segment a->b crosses no Wall or DoorClosed cell.
bool line_of_sight(const TileMap& map, Vec2 a, Vec2 b);
// Same test, but the cell holding `target` itself is not checked. Used for
// seeing doors and switches, whose own cell is opaque or solid.
bool line_of_sight_to_cell(const TileMap& map, Vec2 from, Cell target);

RoomLabel room_of(const TileMap& map, Vec2 pos);

// Distance along the ray to the first cell for which `stop` holds, or
// max_range if none is hit.
double ray_distance(const TileMap& map, Vec2 origin, Vec2 dir, double max_range,
                    const std::function<bool(CellKind)>& stop);

// Smallest t >= 0 with |origin + t*dir - center| = radius, if any.
std::optional<double> ray_circle(Vec2 origin, Vec2 dir, Vec2 center, double radius);

// Whether a circle of `radius` at `p` overlaps any solid cell.
bool circle_hits_solid(const TileMap& map, Vec2 p, double radius);

}  // namespace llmdoom::sim
