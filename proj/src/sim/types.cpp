#include "llmdoom/sim/types.hpp"

#include "llmdoom/sim/world.hpp"

namespace llmdoom::sim {

std::string_view to_string(RoomLabel label) {
  switch (label) {
    case RoomLabel::A: return "A";
    case RoomLabel::B: return "B";
    case RoomLabel::C: return "C";
    case RoomLabel::D: return "D";
    case RoomLabel::Hall: return "Hall";
    case RoomLabel::None: break;
  }
  return "None";
}

std::optional<RoomLabel> parse_room_label(std::string_view text) {
  for (auto l : {RoomLabel::None, RoomLabel::A, RoomLabel::B, RoomLabel::C, RoomLabel::D,
                 RoomLabel::Hall}) {
    if (to_string(l) == text) return l;
  }
  return std::nullopt;
}

std::string_view to_string(EnemyKind kind) {
  return kind == EnemyKind::Imp ? "imp" : "zombieman";
}

std::string_view to_string(PickupKind kind) {
  switch (kind) {
    case PickupKind::Health: return "health";
    case PickupKind::Armor: return "armor";
    case PickupKind::Ammo: break;
  }
  return "ammo";
}

namespace {

struct ActionNames {
  Action action;
  std::string_view token;
  std::string_view name;
};

constexpr std::array<ActionNames, 17> kActionNames = {{
    {Action::Up, "UP", "UP"},
    {Action::Down, "DOWN", "DOWN"},
    {Action::Left, "LEFT", "LEFT"},
    {Action::Right, "RIGHT", "RIGHT"},
    {Action::StrafeLeft, "STRAFE LEFT", "STRAFE_LEFT"},
    {Action::StrafeRight, "STRAFE RIGHT", "STRAFE_RIGHT"},
    {Action::Fire, "FIRE", "FIRE"},
    {Action::Use, "USE", "USE"},
    {Action::Wait, "WAIT", "WAIT"},
    {Action::Speed, "SPEED", "SPEED"},
    {Action::Weapon1, "1", "WEAPON_1"},
    {Action::Weapon2, "2", "WEAPON_2"},
    {Action::Weapon3, "3", "WEAPON_3"},
    {Action::Weapon4, "4", "WEAPON_4"},
    {Action::Weapon5, "5", "WEAPON_5"},
    {Action::Weapon6, "6", "WEAPON_6"},
    {Action::Weapon7, "7", "WEAPON_7"},
}};

}  // namespace

std::string_view canonical_token(Action a) { return kActionNames[static_cast<std::size_t>(a)].token; }
std::string_view action_name(Action a) { return kActionNames[static_cast<std::size_t>(a)].name; }

std::optional<Action> parse_action_name(std::string_view name) {
  for (const auto& n : kActionNames) {
    if (n.name == name) return n.action;
  }
  return std::nullopt;
}

bool is_motion(Action a) {
  switch (a) {
    case Action::Up:
    case Action::Down:
    case Action::Left:
    case Action::Right:
    case Action::StrafeLeft:
    case Action::StrafeRight:
      return true;
    default:
      return false;
  }
}

namespace {
constexpr std::array<std::string_view, 11> kEventNames = {
    "Moved",           "Blocked",    "DamageTaken", "EnemyKilled", "BarrelExploded", "DoorOpened",
    "SwitchActivated", "PlayerDied", "PickupCollected", "Fired",   "EmptyClick",
};
}  // namespace

std::string_view to_string(EventKind kind) { return kEventNames[static_cast<std::size_t>(kind)]; }

std::optional<EventKind> parse_event_kind(std::string_view name) {
  for (std::size_t i = 0; i < kEventNames.size(); ++i) {
    if (kEventNames[i] == name) return static_cast<EventKind>(i);
  }
  return std::nullopt;
}

}  // namespace llmdoom::sim
