#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "llmdoom/sim/map.hpp"

namespace llmdoom::sim {

enum class AmmoType : std::uint8_t { Bull, Shel, Rock, Cell };

struct PlayerState {
  Vec2 pos;
  double angle = 0.0;  // degrees, [0, 360)
  int health = 100;
  int armor = 0;
  std::array<int, 4> ammo{};  // indexed by AmmoType
  std::uint8_t weapons_owned = 0b11;  // bit n-1 set => slot n owned
  int equipped = 2;
  bool speed_on = false;

  int& ammo_of(AmmoType t) { return ammo[static_cast<std::size_t>(t)]; }
  int ammo_of(AmmoType t) const { return ammo[static_cast<std::size_t>(t)]; }
  bool owns(int slot) const {
    return slot >= 1 && slot <= 7 && ((weapons_owned >> (slot - 1)) & 1U) != 0;
  }
  bool dead() const { return health <= 0; }

  friend bool operator==(const PlayerState&, const PlayerState&) = default;
};

struct Enemy {
  EnemyKind kind = EnemyKind::Zombieman;
  int hp = 0;
  Vec2 pos;
  EnemyState state = EnemyState::Idle;
  int attack_timer = 0;  // ticks spent in attack range since the last roll

  bool dead() const { return state == EnemyState::Dead; }
  friend bool operator==(const Enemy&, const Enemy&) = default;
};

struct Barrel {
  Vec2 pos;
  int hp = 0;
  bool exploded = false;
  friend bool operator==(const Barrel&, const Barrel&) = default;
};

struct Pickup {
  PickupKind kind = PickupKind::Health;
  Vec2 pos;
  bool collected = false;
  friend bool operator==(const Pickup&, const Pickup&) = default;
};

enum class EventKind : std::uint8_t {
  Moved,
  Blocked,
  DamageTaken,
  EnemyKilled,
  BarrelExploded,
  DoorOpened,
  SwitchActivated,
  PlayerDied,
  PickupCollected,
  Fired,
  EmptyClick,
};

std::string_view to_string(EventKind kind);
std::optional<EventKind> parse_event_kind(std::string_view name);

// `amount` carries health lost for DamageTaken; `entity` indexes the enemy,
// barrel, or pickup list, or the row-major cell index for door/switch events.
struct Event {
  EventKind kind = EventKind::Moved;
  int amount = 0;
  int entity = -1;
  friend bool operator==(const Event&, const Event&) = default;
};

using EventList = std::vector<Event>;

struct World {
  TileMap map;
  PlayerState player;
  std::vector<Enemy> enemies;
  std::vector<Barrel> barrels;
  std::vector<Pickup> pickups;
  std::int64_t frame = 0;
  std::mt19937_64 rng;
  bool finished = false;

  int acid_ticks = 0;              // consecutive ticks spent on acid
  bool blocked_last_tick = false;  // last movement attempt failed outright
  std::int64_t last_hurt_frame = -1;

  friend bool operator==(const World&, const World&) = default;
};

World make_world(TileMap map, std::uint64_t seed);

// Advance one frame with the given held key (or none).
EventList tick(World& world, PressInput input);

// Pistol shot along the facing ray. Normally reached through tick().
EventList fire_hitscan(World& world);
// Opens a facing door or flips the switch within reach.
EventList use_interact(World& world);

// Door or switch the player could USE right now: within kUseRange of the cell
// centre and in the facing half-plane.
bool within_use_reach(const PlayerState& player, Cell cell);

// Uniform double in [0, 1) from one 64-bit draw; bit-exact across platforms.
double uniform01(std::mt19937_64& rng);

}  // namespace llmdoom::sim
