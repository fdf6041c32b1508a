#include "llmdoom/scene/scene.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

#include "llmdoom/sim/geometry.hpp"
#include "llmdoom/sim/tuning.hpp"

namespace llmdoom::scene {

using sim::Cell;
using sim::CellKind;
using sim::Vec2;

std::string_view to_string(Bearing b) {
  switch (b) {
    case Bearing::Left: return "left";
    case Bearing::Right: return "right";
    case Bearing::Centre: break;
  }
  return "centre";
}

std::string_view to_string(DistanceBucket d) {
  switch (d) {
    case DistanceBucket::Mid: return "mid";
    case DistanceBucket::Far: return "far";
    case DistanceBucket::Near: break;
  }
  return "near";
}

namespace {

constexpr std::string_view kAcidLine = "You are standing in green acid!";
constexpr std::string_view kBlockedLine = "Something is blocking your way.";
constexpr std::string_view kHurtLine = "You are taking damage!";

Bearing bucket_bearing(double rel) {
  if (std::abs(rel) <= kCentreHalfAngleDeg) return Bearing::Centre;
  return rel > 0 ? Bearing::Left : Bearing::Right;
}

DistanceBucket bucket_distance(double d) {
  if (d <= kNearMax) return DistanceBucket::Near;
  if (d <= kMidMax) return DistanceBucket::Mid;
  return DistanceBucket::Far;
}

struct Candidate {
  EntityRef ref;
  Vec2 centre;
  bool cell_target;  // LOS ignores the target's own cell
};

std::string room_line(sim::RoomLabel label) {
  switch (label) {
    case sim::RoomLabel::A: return "You are in a large room with grey stone walls and a shallow blue pool.";
    case sim::RoomLabel::B: return "You are in a room lined with computer panels and blue walls.";
    case sim::RoomLabel::C: return "You are in a room with a green floor and brown metallic walls.";
    case sim::RoomLabel::D: return "You are in a small room with wooden walls.";
    case sim::RoomLabel::Hall: return "You are in a narrow hallway.";
    case sim::RoomLabel::None: break;
  }
  return "You are standing in a doorway.";
}

std::string article_for(std::string_view noun) {
  if (noun == "switch") return "the";
  return std::string_view("aeiou").find(noun.front()) != std::string_view::npos ? "an" : "a";
}

std::string sighting(std::string_view noun, const VisibleEntity& v) {
  std::string s = "You see " + article_for(noun) + " " + std::string(noun) + " (" +
                  std::string(to_string(v.distance)) + ", " + std::string(to_string(v.bearing));
  if (v.within_reach) s += ", within reach";
  return s + ").";
}

}  // namespace

std::vector<VisibleEntity> visible_entities(const sim::World& w) {
  const auto& p = w.player;
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < w.enemies.size(); ++i) {
    if (!w.enemies[i].dead()) candidates.push_back({{EntityType::Enemy, static_cast<int>(i)}, w.enemies[i].pos, false});
  }
  for (std::size_t i = 0; i < w.barrels.size(); ++i) {
    if (!w.barrels[i].exploded) candidates.push_back({{EntityType::Barrel, static_cast<int>(i)}, w.barrels[i].pos, false});
  }
  for (std::size_t i = 0; i < w.pickups.size(); ++i) {
    if (!w.pickups[i].collected) candidates.push_back({{EntityType::Pickup, static_cast<int>(i)}, w.pickups[i].pos, false});
  }
  const int r = static_cast<int>(kViewRange) + 1;
  const Cell here = sim::cell_of(p.pos);
  for (int y = here.y - r; y <= here.y + r; ++y) {
    for (int x = here.x - r; x <= here.x + r; ++x) {
      const Cell c{x, y};
      if (!w.map.in_bounds(c)) continue;
      const int idx = static_cast<int>(w.map.index(c));
      switch (w.map.at(c)) {
        case CellKind::DoorClosed:
        case CellKind::DoorOpen: candidates.push_back({{EntityType::Door, idx}, sim::center_of(c), true}); break;
        case CellKind::Switch: candidates.push_back({{EntityType::Switch, idx}, sim::center_of(c), true}); break;
        case CellKind::Acid: candidates.push_back({{EntityType::Acid, idx}, sim::center_of(c), false}); break;
        default: break;
      }
    }
  }

  std::vector<VisibleEntity> out;
  for (const auto& c : candidates) {
    const double range = sim::distance(p.pos, c.centre);
    if (range > kViewRange) continue;
    const double rel = sim::relative_bearing(p.pos, p.angle, c.centre);
    if (std::abs(rel) > kViewHalfAngleDeg) continue;
    const Cell cell = sim::cell_of(c.centre);
    const bool los = c.cell_target ? sim::line_of_sight_to_cell(w.map, p.pos, cell)
                                   : sim::line_of_sight(w.map, p.pos, c.centre);
    if (!los) continue;
    VisibleEntity v{c.ref, bucket_bearing(rel), bucket_distance(range), range, rel, false};
    if (c.ref.type == EntityType::Door || c.ref.type == EntityType::Switch) {
      v.within_reach = sim::within_use_reach(p, cell);
    } else if (c.ref.type == EntityType::Enemy) {
      v.within_reach = range <= sim::tuning::kUseRange;
    }
    out.push_back(v);
  }
  std::stable_sort(out.begin(), out.end(), [](const VisibleEntity& a, const VisibleEntity& b) {
    if (a.range != b.range) return a.range < b.range;
    if (a.ref.type != b.ref.type) return a.ref.type < b.ref.type;
    return a.ref.index < b.ref.index;
  });
  return out;
}

std::string noun_for(const sim::World& w, EntityRef ref) {
  switch (ref.type) {
    case EntityType::Enemy: return std::string(sim::to_string(w.enemies[static_cast<std::size_t>(ref.index)].kind));
    case EntityType::Barrel: return "explosive barrel";
    case EntityType::Pickup:
      switch (w.pickups[static_cast<std::size_t>(ref.index)].kind) {
        case sim::PickupKind::Health: return "health pack";
        case sim::PickupKind::Armor: return "armor bonus";
        case sim::PickupKind::Ammo: return "ammo clip";
      }
      break;
    case EntityType::Door:
      return w.map.cells[static_cast<std::size_t>(ref.index)] == CellKind::DoorClosed ? "closed door"
                                                                                      : "open doorway";
    case EntityType::Acid: return "pool of green acid";
    case EntityType::Switch: return "switch";
  }
  return "thing";
}

std::vector<HudField> render_hud(const sim::PlayerState& p) {
  using sim::AmmoType;
  std::string owned;
  std::string missing;
  for (int slot = 1; slot <= 7; ++slot) {
    std::string& dst = p.owns(slot) ? owned : missing;
    if (!dst.empty()) dst += ' ';
    dst += std::to_string(slot);
  }
  return {
      {"current_ammo", p.equipped == 2 ? std::to_string(p.ammo_of(AmmoType::Bull)) : "none"},
      {"health_pct", std::to_string(p.health)},
      {"owned_weapon_slots", (owned.empty() ? "none" : owned) + " | unavailable: " +
                                 (missing.empty() ? "none" : missing)},
      {"armor_pct", std::to_string(p.armor)},
      {"BULL", std::to_string(p.ammo_of(AmmoType::Bull))},
      {"SHEL", std::to_string(p.ammo_of(AmmoType::Shel))},
      {"ROCK", std::to_string(p.ammo_of(AmmoType::Rock))},
      {"CELL", std::to_string(p.ammo_of(AmmoType::Cell))},
  };
}

SceneDescription describe_scene(const sim::World& w) {
  SceneDescription scene;
  scene.prose.push_back(room_line(sim::room_of(w.map, w.player.pos)));

  const auto visible = visible_entities(w);
  if (w.map.at(sim::cell_of(w.player.pos)) == CellKind::Acid) scene.prose.emplace_back(kAcidLine);
  for (const auto& v : visible) {
    if (v.ref.type == EntityType::Acid) {
      scene.prose.push_back(sighting("pool of green acid", v));
      break;
    }
  }
  if (w.blocked_last_tick) scene.prose.emplace_back(kBlockedLine);
  if (w.last_hurt_frame >= 0 && w.frame - w.last_hurt_frame <= 2) scene.prose.emplace_back(kHurtLine);

  for (const auto& v : visible) {
    if (v.ref.type == EntityType::Acid) continue;
    scene.prose.push_back(sighting(noun_for(w, v.ref), v));
  }
  scene.hud = render_hud(w.player);
  return scene;
}

std::string SceneDescription::text() const {
  std::ostringstream ss;
  for (const auto& line : prose) ss << line << '\n';
  ss << "\nHUD:\n";
  for (const auto& f : hud) ss << f.key << ": " << f.value << '\n';
  return ss.str();
}

std::string scene_summary(const SceneDescription& scene) {
  std::string out;
  const auto field = [&](std::string_view key) -> std::string {
    for (const auto& f : scene.hud) {
      if (f.key == key) return f.value;
    }
    return "?";
  };
  out = "hp " + field("health_pct") + ", armor " + field("armor_pct") + ", ammo " + field("BULL");
  int listed = 0;
  for (const auto& line : scene.prose) {
    if (line == kBlockedLine) out += ", blocked";
    if (line == kHurtLine) out += ", hurt";
    if (line == kAcidLine) out += ", in acid";
  }
  for (const auto& line : scene.prose) {
    if (!line.starts_with("You see ") || listed >= 3) continue;
    std::string thing = line.substr(8);
    if (thing.ends_with('.')) thing.pop_back();
    out += listed == 0 ? "; sees " : ", ";
    out += thing;
    ++listed;
  }
  return out;
}

std::optional<Observation> parse_scene(std::string_view text) {
  static const std::regex kSighting(
      R"(^You see (?:a|an|the) (.+) \((near|mid|far), (left|centre|right)(, within reach)?\)\.$)");
  static const std::vector<std::string> kHudKeys = {"current_ammo", "health_pct", "owned_weapon_slots",
                                                    "armor_pct",   "BULL",       "SHEL",
                                                    "ROCK",        "CELL"};
  Observation obs;
  bool in_hud = false;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line == "HUD:") {
      in_hud = true;
      continue;
    }
    if (in_hud) {
      const auto colon = line.find(": ");
      if (colon != std::string::npos) obs.hud[line.substr(0, colon)] = line.substr(colon + 2);
      continue;
    }
    if (line == kAcidLine) obs.on_acid = true;
    if (line == kBlockedLine) obs.blocked = true;
    if (line == kHurtLine) obs.hurt = true;
    std::smatch m;
    if (std::regex_match(line, m, kSighting)) {
      SeenThing t;
      t.noun = m[1];
      t.distance = m[2] == "near" ? DistanceBucket::Near : (m[2] == "mid" ? DistanceBucket::Mid : DistanceBucket::Far);
      t.bearing = m[3] == "left" ? Bearing::Left : (m[3] == "right" ? Bearing::Right : Bearing::Centre);
      t.within_reach = m[4].matched;
      obs.things.push_back(std::move(t));
    }
  }
  for (const auto& key : kHudKeys) {
    if (!obs.hud.contains(key)) return std::nullopt;
  }
  return obs;
}

}  // namespace llmdoom::scene
