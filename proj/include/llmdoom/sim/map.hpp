#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "llmdoom/sim/types.hpp"

namespace llmdoom::sim {

struct EnemySpawn {
  Vec2 pos;
  EnemyKind kind = EnemyKind::Zombieman;
  friend bool operator==(const EnemySpawn&, const EnemySpawn&) = default;
};

struct PickupSpawn {
  Vec2 pos;
  PickupKind kind = PickupKind::Health;
  friend bool operator==(const PickupSpawn&, const PickupSpawn&) = default;
};

struct TileMap {
  int width = 0;
  int height = 0;
  std::vector<CellKind> cells;       // row-major
  std::vector<RoomLabel> room_labels;  // row-major
  Vec2 spawn;
  double spawn_angle = 0.0;
  std::vector<EnemySpawn> enemy_spawns;
  std::vector<Vec2> barrel_spawns;
  std::vector<PickupSpawn> pickup_spawns;

  bool in_bounds(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < width && c.y < height; }

  // Out-of-bounds cells read as Wall / None.
  CellKind at(Cell c) const {
    return in_bounds(c) ? cells[index(c)] : CellKind::Wall;
  }
  RoomLabel label_at(Cell c) const {
    return in_bounds(c) ? room_labels[index(c)] : RoomLabel::None;
  }
  void set(Cell c, CellKind kind) { cells[index(c)] = kind; }

  std::size_t index(Cell c) const {
    return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(c.x);
  }

  friend bool operator==(const TileMap&, const TileMap&) = default;
};

// Blocks player and enemy movement.
inline bool is_solid(CellKind k) {
  return k == CellKind::Wall || k == CellKind::DoorClosed || k == CellKind::Switch;
}
// Blocks sight.
inline bool is_opaque(CellKind k) { return k == CellKind::Wall || k == CellKind::DoorClosed; }

class MapLoadError : public std::runtime_error {
 public:
  MapLoadError(std::string invariant, const std::string& detail)
      : std::runtime_error(invariant + ": " + detail), invariant_(std::move(invariant)) {}
  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

// Map text: an ASCII grid (one char per cell) terminated by a blank line or by
// a key line, then optional `facing: <deg>` and a `rooms:` section with one
// `<label> <x0> <y0> <x1> <y1>` inclusive rectangle per line.
//
//   #  wall        .  floor       D  closed door   ~  acid      S  switch
//   P  spawn       z  zombieman   i  imp           b  barrel
//   h  health      a  armor       m  ammo
//
// Throws MapLoadError naming the violated invariant.
TileMap load_map(std::string_view text);
TileMap load_map_file(const std::filesystem::path& path);

// Cells reachable from the spawn through non-Wall cells with every door open.
std::vector<bool> reachable_from_spawn(const TileMap& map);

}  // namespace llmdoom::sim
