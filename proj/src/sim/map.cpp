#include "llmdoom/sim/map.hpp"

#include <deque>
#include <fstream>
#include <sstream>

namespace llmdoom::sim {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool is_key_line(std::string_view line) {
  return line.starts_with("rooms:") || line.starts_with("facing:");
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::string cell_str(Cell c) { return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")"; }

void parse_rooms_line(std::string_view line, std::size_t line_no, TileMap& map,
                      std::vector<bool>& assigned) {
  std::istringstream in{std::string(line)};
  std::string label_text;
  int x0, y0, x1, y1;
  if (!(in >> label_text >> x0 >> y0 >> x1 >> y1)) {
    throw MapLoadError("room rectangle", "line " + std::to_string(line_no) +
                                             ": expected '<label> <x0> <y0> <x1> <y1>'");
  }
  auto label = parse_room_label(label_text);
  if (!label || *label == RoomLabel::None) {
    throw MapLoadError("room rectangle", "line " + std::to_string(line_no) +
                                             ": unknown room label '" + label_text + "'");
  }
  if (x0 > x1 || y0 > y1 || !map.in_bounds({x0, y0}) || !map.in_bounds({x1, y1})) {
    throw MapLoadError("room rectangle",
                       "line " + std::to_string(line_no) + ": rectangle outside the grid");
  }
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const auto i = map.index({x, y});
      if (assigned[i]) {
        throw MapLoadError("room rectangle", "line " + std::to_string(line_no) +
                                                 ": overlaps another room at " + cell_str({x, y}));
      }
      assigned[i] = true;
      map.room_labels[i] = *label;
    }
  }
}

void validate(const TileMap& map) {
  int switches = 0;
  Cell switch_cell{};
  for (int y = 0; y < map.height; ++y) {
    for (int x = 0; x < map.width; ++x) {
      if (map.at({x, y}) == CellKind::Switch) {
        ++switches;
        switch_cell = {x, y};
      }
    }
  }
  if (switches == 0) throw MapLoadError("missing switch", "the map has no 'S' cell");
  if (switches > 1) throw MapLoadError("switch count", "the map has more than one 'S' cell");
  if (map.label_at(switch_cell) != RoomLabel::D) {
    throw MapLoadError("switch label", "switch at " + cell_str(switch_cell) + " is not in room D");
  }

  const auto reach = reachable_from_spawn(map);
  if (!reach[map.index(switch_cell)]) {
    throw MapLoadError("switch unreachable",
                       "no path from the spawn to the switch at " + cell_str(switch_cell));
  }
  for (int y = 0; y < map.height; ++y) {
    for (int x = 0; x < map.width; ++x) {
      if (map.at({x, y}) != CellKind::Wall && !reach[map.index({x, y})]) {
        throw MapLoadError("cell unreachable", "cell " + cell_str({x, y}) +
                                                   " is not connected to the spawn");
      }
    }
  }

  bool has_c = false;
  bool c_has_acid = false;
  for (int y = 0; y < map.height; ++y) {
    for (int x = 0; x < map.width; ++x) {
      if (map.label_at({x, y}) == RoomLabel::C && map.at({x, y}) != CellKind::Wall) {
        has_c = true;
        c_has_acid = c_has_acid || map.at({x, y}) == CellKind::Acid;
      }
    }
  }
  if (has_c && !c_has_acid) throw MapLoadError("room C acid", "room C contains no acid cell");

  // Rooms may only touch through door cells.
  auto open_ground = [&](Cell c) {
    const auto k = map.at(c);
    return k == CellKind::Floor || k == CellKind::Acid || k == CellKind::Switch;
  };
  for (int y = 0; y < map.height; ++y) {
    for (int x = 0; x < map.width; ++x) {
      const Cell c{x, y};
      if (!open_ground(c)) continue;
      for (const Cell n : {Cell{x + 1, y}, Cell{x, y + 1}}) {
        if (map.in_bounds(n) && open_ground(n) && map.label_at(n) != map.label_at(c)) {
          throw MapLoadError("room separation", "cells " + cell_str(c) + " and " + cell_str(n) +
                                                    " join different rooms without a door");
        }
      }
    }
  }
}

}  // namespace

std::vector<bool> reachable_from_spawn(const TileMap& map) {
  std::vector<bool> seen(map.cells.size(), false);
  const Cell start = cell_of(map.spawn);
  if (!map.in_bounds(start)) return seen;
  std::deque<Cell> queue{start};
  seen[map.index(start)] = true;
  while (!queue.empty()) {
    const Cell c = queue.front();
    queue.pop_front();
    for (const Cell n : {Cell{c.x + 1, c.y}, Cell{c.x - 1, c.y}, Cell{c.x, c.y + 1},
                         Cell{c.x, c.y - 1}}) {
      if (!map.in_bounds(n) || seen[map.index(n)] || map.at(n) == CellKind::Wall) continue;
      seen[map.index(n)] = true;
      // A switch is a wall fixture: reachable, but not a thoroughfare.
      if (map.at(n) != CellKind::Switch) queue.push_back(n);
    }
  }
  return seen;
}

TileMap load_map(std::string_view text) {
  const auto lines = split_lines(text);
  std::size_t i = 0;
  std::vector<std::string_view> grid;
  for (; i < lines.size(); ++i) {
    if (lines[i].empty() || is_key_line(lines[i])) break;
    grid.push_back(lines[i]);
  }
  if (grid.empty()) throw MapLoadError("malformed grid", "no grid rows before the legend");

  TileMap map;
  map.height = static_cast<int>(grid.size());
  map.width = static_cast<int>(grid.front().size());
  map.cells.assign(static_cast<std::size_t>(map.width * map.height), CellKind::Wall);
  map.room_labels.assign(map.cells.size(), RoomLabel::None);

  int spawns = 0;
  for (int y = 0; y < map.height; ++y) {
    const auto row = grid[static_cast<std::size_t>(y)];
    if (static_cast<int>(row.size()) != map.width) {
      throw MapLoadError("malformed grid", "row " + std::to_string(y) + " has width " +
                                               std::to_string(row.size()) + ", expected " +
                                               std::to_string(map.width));
    }
    for (int x = 0; x < map.width; ++x) {
      const Cell c{x, y};
      const Vec2 centre = center_of(c);
      CellKind kind = CellKind::Floor;
      switch (row[static_cast<std::size_t>(x)]) {
        case '#': kind = CellKind::Wall; break;
        case '.': break;
        case 'D': kind = CellKind::DoorClosed; break;
        case '~': kind = CellKind::Acid; break;
        case 'S': kind = CellKind::Switch; break;
        case 'P':
          ++spawns;
          map.spawn = centre;
          break;
        case 'z': map.enemy_spawns.push_back({centre, EnemyKind::Zombieman}); break;
        case 'i': map.enemy_spawns.push_back({centre, EnemyKind::Imp}); break;
        case 'b': map.barrel_spawns.push_back(centre); break;
        case 'h': map.pickup_spawns.push_back({centre, PickupKind::Health}); break;
        case 'a': map.pickup_spawns.push_back({centre, PickupKind::Armor}); break;
        case 'm': map.pickup_spawns.push_back({centre, PickupKind::Ammo}); break;
        default:
          throw MapLoadError("unknown cell character",
                             std::string("'") + row[static_cast<std::size_t>(x)] + "' at " +
                                 cell_str(c));
      }
      map.set(c, kind);
    }
  }
  if (spawns != 1) {
    throw MapLoadError("spawn count", "expected exactly one 'P', found " + std::to_string(spawns));
  }

  std::vector<bool> assigned(map.cells.size(), false);
  bool in_rooms = false;
  for (; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    const auto line_no = i + 1;
    if (line.empty()) continue;
    if (line.starts_with("facing:")) {
      try {
        map.spawn_angle = std::stod(std::string(trim(line.substr(7))));
      } catch (const std::exception&) {
        throw MapLoadError("malformed legend", "line " + std::to_string(line_no) + ": bad facing");
      }
      in_rooms = false;
    } else if (line == "rooms:") {
      in_rooms = true;
    } else if (in_rooms) {
      parse_rooms_line(line, line_no, map, assigned);
    } else {
      throw MapLoadError("malformed legend",
                         "line " + std::to_string(line_no) + ": unexpected '" + std::string(line) + "'");
    }
  }

  validate(map);
  return map;
}

TileMap load_map_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MapLoadError("unreadable map", "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_map(ss.str());
}

}  // namespace llmdoom::sim
