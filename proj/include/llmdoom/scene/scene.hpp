#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "llmdoom/sim/world.hpp"

namespace llmdoom::scene {

inline constexpr double kViewHalfAngleDeg = 45.0;
inline constexpr double kViewRange = 15.0;
inline constexpr double kCentreHalfAngleDeg = 7.5;
inline constexpr double kNearMax = 4.0;
inline constexpr double kMidMax = 9.0;

enum class Bearing { Left, Centre, Right };
enum class DistanceBucket { Near, Mid, Far };

std::string_view to_string(Bearing b);
std::string_view to_string(DistanceBucket d);

enum class EntityType { Enemy, Barrel, Pickup, Door, Acid, Switch };

// `index` is the position in the world's entity list, or the row-major cell
// index for Door / Acid / Switch.
struct EntityRef {
  EntityType type = EntityType::Enemy;
  int index = 0;
  friend bool operator==(const EntityRef&, const EntityRef&) = default;
};

struct VisibleEntity {
  EntityRef ref;
  Bearing bearing = Bearing::Centre;
  DistanceBucket distance = DistanceBucket::Near;
  double range = 0.0;
  double relative_angle = 0.0;  // degrees, positive = left
  bool within_reach = false;    // USE would reach it / enemy is adjacent
};

// Everything inside the view cone and range with a clear line of sight,
// sorted nearest first.
std::vector<VisibleEntity> visible_entities(const sim::World& world);

std::string noun_for(const sim::World& world, EntityRef ref);

struct HudField {
  std::string key;
  std::string value;
  friend bool operator==(const HudField&, const HudField&) = default;
};

// Eight fields in fixed order: current_ammo, health_pct, owned_weapon_slots,
// armor_pct, BULL, SHEL, ROCK, CELL.
std::vector<HudField> render_hud(const sim::PlayerState& player);

struct SceneDescription {
  std::vector<std::string> prose;
  std::vector<HudField> hud;

  std::string text() const;
  friend bool operator==(const SceneDescription&, const SceneDescription&) = default;
};

SceneDescription describe_scene(const sim::World& world);

// One line for the prompt history.
std::string scene_summary(const SceneDescription& scene);

// Parsed form of a scene text, as a text-only consumer would see it.
struct SeenThing {
  std::string noun;
  DistanceBucket distance = DistanceBucket::Near;
  Bearing bearing = Bearing::Centre;
  bool within_reach = false;
  friend bool operator==(const SeenThing&, const SeenThing&) = default;
};

struct Observation {
  std::vector<SeenThing> things;
  bool blocked = false;
  bool hurt = false;
  bool on_acid = false;
  std::map<std::string, std::string, std::less<>> hud;
};

// nullopt unless the text carries a complete HUD block.
std::optional<Observation> parse_scene(std::string_view text);

}  // namespace llmdoom::scene
