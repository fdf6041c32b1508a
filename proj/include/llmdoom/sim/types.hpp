#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace llmdoom::sim {

// Continuous position in tile units. x grows east, y grows south (row order),
// so a cell (col, row) spans [col, col+1) x [row, row+1).
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;

  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double length() const { return std::hypot(x, y); }
};

inline double distance(Vec2 a, Vec2 b) { return (a - b).length(); }

struct Cell {
  int x = 0;
  int y = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

inline Cell cell_of(Vec2 p) {
  return {static_cast<int>(std::floor(p.x)), static_cast<int>(std::floor(p.y))};
}
inline Vec2 center_of(Cell c) { return {c.x + 0.5, c.y + 0.5}; }

enum class CellKind : std::uint8_t { Floor, Wall, DoorClosed, DoorOpen, Acid, Switch };
enum class RoomLabel : std::uint8_t { None, A, B, C, D, Hall };

std::string_view to_string(RoomLabel label);
std::optional<RoomLabel> parse_room_label(std::string_view text);

enum class EnemyKind : std::uint8_t { Zombieman, Imp };
enum class EnemyState : std::uint8_t { Idle, Alert, Dead };
enum class PickupKind : std::uint8_t { Health, Armor, Ammo };

std::string_view to_string(EnemyKind kind);
std::string_view to_string(PickupKind kind);

// The closed set of keystrokes the agent may emit.
enum class Action : std::uint8_t {
  Up,
  Down,
  Left,
  Right,
  StrafeLeft,
  StrafeRight,
  Fire,
  Use,
  Wait,
  Speed,
  Weapon1,
  Weapon2,
  Weapon3,
  Weapon4,
  Weapon5,
  Weapon6,
  Weapon7,
};

inline constexpr std::array<Action, 17> kAllActions = {
    Action::Up,      Action::Down,    Action::Left,    Action::Right,      Action::StrafeLeft,
    Action::StrafeRight, Action::Fire, Action::Use,    Action::Wait,       Action::Speed,
    Action::Weapon1, Action::Weapon2, Action::Weapon3, Action::Weapon4,    Action::Weapon5,
    Action::Weapon6, Action::Weapon7,
};

// Canonical token as the agent is asked to print it ("STRAFE LEFT", "3", ...).
std::string_view canonical_token(Action a);
// Stable identifier used in trace files ("STRAFE_LEFT", "WEAPON_3", ...).
std::string_view action_name(Action a);
std::optional<Action> parse_action_name(std::string_view name);

bool is_motion(Action a);
inline std::optional<int> weapon_slot(Action a) {
  if (a >= Action::Weapon1 && a <= Action::Weapon7) {
    return static_cast<int>(a) - static_cast<int>(Action::Weapon1) + 1;
  }
  return std::nullopt;
}

// One frame of held input; nullopt means no key held.
using PressInput = std::optional<Action>;

}  // namespace llmdoom::sim
