#include "llmdoom/sim/world.hpp"

#include <algorithm>
#include <deque>

#include "llmdoom/sim/geometry.hpp"
#include "llmdoom/sim/tuning.hpp"

namespace llmdoom::sim {

using namespace tuning;

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

World make_world(TileMap map, std::uint64_t seed) {
  World w;
  w.player.pos = map.spawn;
  w.player.angle = normalize_angle(map.spawn_angle);
  w.player.ammo_of(AmmoType::Bull) = kStartBullets;
  for (const auto& s : map.enemy_spawns) {
    w.enemies.push_back({s.kind, s.kind == EnemyKind::Imp ? kImpHp : kZombiemanHp, s.pos,
                         EnemyState::Idle, 0});
  }
  for (const auto& b : map.barrel_spawns) w.barrels.push_back({b, kBarrelHp, false});
  for (const auto& p : map.pickup_spawns) w.pickups.push_back({p.kind, p.pos, false});
  w.map = std::move(map);
  w.rng.seed(seed);
  return w;
}

bool within_use_reach(const PlayerState& player, Cell cell) {
  const Vec2 to = center_of(cell) - player.pos;
  return to.length() <= kUseRange && to.dot(heading(player.angle)) > 0.0;
}

namespace {

// Damage to the player; armor soaks a third while it lasts. Returns health lost.
int hurt_player(World& w, int damage, bool armor_applies, EventList& events) {
  PlayerState& p = w.player;
  if (p.dead() || damage <= 0) return 0;
  int absorbed = 0;
  if (armor_applies && p.armor > 0) absorbed = std::min(p.armor, damage / 3);
  p.armor -= absorbed;
  const int lost = std::min(p.health, damage - absorbed);
  p.health -= lost;
  w.last_hurt_frame = w.frame;
  events.push_back({EventKind::DamageTaken, lost, -1});
  return lost;
}

void damage_enemy(World& w, std::size_t i, int damage, EventList& events) {
  Enemy& e = w.enemies[i];
  if (e.dead()) return;
  e.hp -= damage;
  if (e.hp <= 0) {
    e.state = EnemyState::Dead;
    events.push_back({EventKind::EnemyKilled, 0, static_cast<int>(i)});
  } else {
    e.state = EnemyState::Alert;
  }
}

// Explodes barrel i and propagates the blast, including to other barrels.
void detonate(World& w, std::size_t first, EventList& events) {
  std::deque<std::size_t> pending{first};
  while (!pending.empty()) {
    const std::size_t bi = pending.front();
    pending.pop_front();
    Barrel& b = w.barrels[bi];
    if (b.exploded) continue;
    b.exploded = true;
    events.push_back({EventKind::BarrelExploded, 0, static_cast<int>(bi)});
    const Vec2 at = b.pos;
    for (std::size_t i = 0; i < w.enemies.size(); ++i) {
      if (!w.enemies[i].dead() && distance(w.enemies[i].pos, at) <= kBarrelBlastRadius) {
        damage_enemy(w, i, kBarrelBlastDamage, events);
      }
    }
    for (std::size_t j = 0; j < w.barrels.size(); ++j) {
      Barrel& other = w.barrels[j];
      if (other.exploded || distance(other.pos, at) > kBarrelBlastRadius) continue;
      other.hp -= kBarrelBlastDamage;
      if (other.hp <= 0) pending.push_back(j);
    }
    if (distance(w.player.pos, at) <= kBarrelBlastRadius) {
      hurt_player(w, kBarrelBlastDamage, true, events);
    }
  }
}

bool blocked_by_entity(const World& w, Vec2 from, Vec2 to) {
  const auto blocks = [&](Vec2 centre, double radius) {
    const double limit = radius + kPlayerRadius;
    const double d_to = distance(to, centre);
    // Moving away from something already overlapping is always allowed.
    return d_to < limit && d_to < distance(from, centre);
  };
  for (const auto& e : w.enemies) {
    if (!e.dead() && blocks(e.pos, kEnemyRadius)) return true;
  }
  for (const auto& b : w.barrels) {
    if (!b.exploded && blocks(b.pos, kBarrelRadius)) return true;
  }
  return false;
}

bool can_stand(const World& w, Vec2 from, Vec2 to) {
  return !circle_hits_solid(w.map, to, kPlayerRadius) && !blocked_by_entity(w, from, to);
}

// Tries the full step, then the axis components (sliding along a wall), then
// the full step shifted sideways by a small nudge so the player rounds door
// frames instead of sticking on the corner.
bool try_move_player(World& w, Vec2 delta) {
  const Vec2 from = w.player.pos;
  for (const Vec2 d : {delta, Vec2{delta.x, 0.0}, Vec2{0.0, delta.y}}) {
    if (d.x == 0.0 && d.y == 0.0) continue;
    if (can_stand(w, from, from + d)) {
      w.player.pos = from + d;
      return true;
    }
  }
  const double len = delta.length();
  if (len == 0.0) return false;
  const Vec2 side{-delta.y / len, delta.x / len};
  for (int k = 1; k * kCornerNudgeStep <= kCornerNudgeMax + 1e-12; ++k) {
    for (const double sign : {1.0, -1.0}) {
      const Vec2 shift = side * (sign * k * kCornerNudgeStep);
      if (can_stand(w, from, from + shift) && can_stand(w, from, from + shift + delta)) {
        w.player.pos = from + shift + delta;
        return true;
      }
    }
  }
  return false;
}

void apply_motion(World& w, Action a, EventList& events) {
  PlayerState& p = w.player;
  if (a == Action::Left || a == Action::Right) {
    p.angle = normalize_angle(p.angle + (a == Action::Left ? kTurnStepDeg : -kTurnStepDeg));
    return;
  }
  const double step = p.speed_on ? kSpeedMoveStep : kMoveStep;
  Vec2 dir;
  switch (a) {
    case Action::Up: dir = heading(p.angle); break;
    case Action::Down: dir = heading(p.angle) * -1.0; break;
    case Action::StrafeLeft: dir = heading(p.angle + 90.0); break;
    case Action::StrafeRight: dir = heading(p.angle - 90.0); break;
    default: return;
  }
  if (try_move_player(w, dir * step)) {
    events.push_back({EventKind::Moved, 0, -1});
  } else {
    w.blocked_last_tick = true;
    events.push_back({EventKind::Blocked, 0, -1});
  }
}

void apply_action(World& w, Action a, EventList& events) {
  PlayerState& p = w.player;
  if (is_motion(a)) {
    apply_motion(w, a, events);
    return;
  }
  if (auto slot = weapon_slot(a)) {
    if (p.owns(*slot)) p.equipped = *slot;
    return;
  }
  switch (a) {
    case Action::Fire:
      if (p.equipped == 2) {
        auto shot = fire_hitscan(w);
        events.insert(events.end(), shot.begin(), shot.end());
      }
      break;
    case Action::Use: {
      auto used = use_interact(w);
      events.insert(events.end(), used.begin(), used.end());
      break;
    }
    case Action::Speed: p.speed_on = !p.speed_on; break;
    default: break;
  }
}

void collect_pickups(World& w, EventList& events) {
  PlayerState& p = w.player;
  for (std::size_t i = 0; i < w.pickups.size(); ++i) {
    Pickup& item = w.pickups[i];
    if (item.collected || distance(item.pos, p.pos) > kPickupRadius) continue;
    item.collected = true;
    switch (item.kind) {
      case PickupKind::Health: p.health = std::min(kPlayerMaxHealth, p.health + kHealthPickup); break;
      case PickupKind::Armor: p.armor = std::min(kPlayerMaxArmor, p.armor + kArmorPickup); break;
      case PickupKind::Ammo:
        p.ammo_of(AmmoType::Bull) = std::min(kMaxBullets, p.ammo_of(AmmoType::Bull) + kAmmoPickup);
        break;
    }
    events.push_back({EventKind::PickupCollected, 0, static_cast<int>(i)});
  }
}

void apply_acid(World& w, EventList& events) {
  if (w.map.at(cell_of(w.player.pos)) != CellKind::Acid) {
    w.acid_ticks = 0;
    return;
  }
  if (++w.acid_ticks >= kAcidPeriod) {
    w.acid_ticks = 0;
    hurt_player(w, kAcidDamage, false, events);
  }
}

void move_enemy(World& w, Enemy& e, Vec2 toward, double step) {
  const Vec2 d = toward - e.pos;
  const double len = d.length();
  if (len <= 0.0 || step <= 0.0) return;
  const Vec2 delta = d * (step / len);
  for (const Vec2 s : {delta, Vec2{delta.x, 0.0}, Vec2{0.0, delta.y}}) {
    if (s.x == 0.0 && s.y == 0.0) continue;
    if (!circle_hits_solid(w.map, e.pos + s, kEnemyRadius)) {
      e.pos = e.pos + s;
      return;
    }
  }
}

void run_enemies(World& w, EventList& events) {
  for (auto& e : w.enemies) {
    if (e.dead() || w.player.dead()) continue;
    const bool sees = line_of_sight(w.map, e.pos, w.player.pos);
    const double dist = distance(e.pos, w.player.pos);
    if (e.state == EnemyState::Idle) {
      if (sees && dist <= kEnemyWakeRange) e.state = EnemyState::Alert;
      else continue;
    }
    if (!sees) {
      e.attack_timer = 0;
      continue;
    }
    if (dist > kEnemyStopDistance) {
      move_enemy(w, e, w.player.pos, std::min(kEnemySpeed, dist - kEnemyStopDistance));
    }
    if (distance(e.pos, w.player.pos) <= kEnemyAttackRange) {
      if (++e.attack_timer >= kEnemyAttackPeriod) {
        e.attack_timer = 0;
        if (uniform01(w.rng) < kEnemyHitChance) hurt_player(w, kEnemyDamage, true, events);
      }
    } else {
      e.attack_timer = 0;
    }
  }
}

}  // namespace

EventList fire_hitscan(World& w) {
  EventList events;
  PlayerState& p = w.player;
  int& bullets = p.ammo_of(AmmoType::Bull);
  if (bullets <= 0) {
    events.push_back({EventKind::EmptyClick, 0, -1});
    return events;
  }
  --bullets;
  events.push_back({EventKind::Fired, 0, -1});

  const Vec2 dir = heading(p.angle);
  const double wall = ray_distance(w.map, p.pos, dir, kPistolRange,
                                   [](CellKind k) { return is_solid(k); });
  double best = wall;
  int enemy_hit = -1;
  int barrel_hit = -1;
  for (std::size_t i = 0; i < w.enemies.size(); ++i) {
    if (w.enemies[i].dead()) continue;
    auto t = ray_circle(p.pos, dir, w.enemies[i].pos, kEnemyHitRadius);
    if (t && *t <= best) {
      best = *t;
      enemy_hit = static_cast<int>(i);
      barrel_hit = -1;
    }
  }
  for (std::size_t i = 0; i < w.barrels.size(); ++i) {
    if (w.barrels[i].exploded) continue;
    auto t = ray_circle(p.pos, dir, w.barrels[i].pos, kBarrelRadius);
    if (t && *t < best) {
      best = *t;
      barrel_hit = static_cast<int>(i);
      enemy_hit = -1;
    }
  }
  if (enemy_hit >= 0) {
    damage_enemy(w, static_cast<std::size_t>(enemy_hit), kPistolDamage, events);
  } else if (barrel_hit >= 0) {
    Barrel& b = w.barrels[static_cast<std::size_t>(barrel_hit)];
    b.hp -= kPistolDamage;
    if (b.hp <= 0) detonate(w, static_cast<std::size_t>(barrel_hit), events);
  }
  return events;
}

EventList use_interact(World& w) {
  EventList events;
  const Cell here = cell_of(w.player.pos);
  const int r = static_cast<int>(std::ceil(kUseRange)) + 1;
  bool flipped = false;
  for (int y = here.y - r; y <= here.y + r; ++y) {
    for (int x = here.x - r; x <= here.x + r; ++x) {
      const Cell c{x, y};
      if (!w.map.in_bounds(c) || !within_use_reach(w.player, c)) continue;
      const auto kind = w.map.at(c);
      if (kind == CellKind::DoorClosed) {
        w.map.set(c, CellKind::DoorOpen);
        events.push_back({EventKind::DoorOpened, 0, static_cast<int>(w.map.index(c))});
      } else if (kind == CellKind::Switch && !flipped) {
        flipped = true;
        w.finished = true;
        events.push_back({EventKind::SwitchActivated, 0, static_cast<int>(w.map.index(c))});
      }
    }
  }
  return events;
}

EventList tick(World& w, PressInput input) {
  EventList events;
  if (w.finished || w.player.dead()) {
    ++w.frame;
    return events;
  }
  w.blocked_last_tick = false;
  if (input) apply_action(w, *input, events);

  if (!w.finished && !w.player.dead()) {
    collect_pickups(w, events);
    apply_acid(w, events);
    run_enemies(w, events);
  }
  if (w.player.dead()) events.push_back({EventKind::PlayerDied, 0, -1});
  ++w.frame;
  return events;
}

}  // namespace llmdoom::sim
