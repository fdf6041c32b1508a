#include <fstream>
#include <sstream>

#include <json.hpp>

#include "llmdoom/trace/trace.hpp"

namespace llmdoom::trace {

using nlohmann::json;
using orchestrator::CallRecord;
using orchestrator::FrameRecord;

std::map<std::string, std::string> config_snapshot(const orchestrator::RunConfig& cfg) {
  const auto& s = cfg.strategy;
  std::map<std::string, std::string> out{
      {"strategy", std::string(prompt::to_string(s.strategy))},
      {"k_level", std::to_string(s.k_level)},
      {"n_experts", std::to_string(s.n_experts)},
      {"history_budget_tokens", std::to_string(s.history_budget_tokens)},
      {"planner_cadence", std::to_string(s.planner_cadence)},
      {"experts_cadence", std::to_string(s.experts_cadence)},
      {"agent_cadence", std::to_string(s.agent_cadence)},
      {"max_frames", std::to_string(cfg.max_frames)},
      {"stuck_timeout_frames", std::to_string(cfg.stuck_timeout_frames)},
      {"backend", std::string(llm::to_string(cfg.backend.kind))},
  };
  if (cfg.backend.kind == llm::BackendKind::Http) {
    out["endpoint"] = cfg.backend.endpoint;
    out["model"] = cfg.backend.model;
    out["api_key_env"] = cfg.backend.api_key_env;
  }
  return out;
}

namespace {

json player_to_json(const sim::PlayerState& p) {
  return {{"x", p.pos.x},         {"y", p.pos.y},           {"angle", p.angle},
          {"health", p.health},   {"armor", p.armor},       {"ammo", p.ammo},
          {"weapons", p.weapons_owned}, {"equipped", p.equipped}, {"speed", p.speed_on}};
}

sim::PlayerState player_from_json(const json& j) {
  sim::PlayerState p;
  p.pos = {j.at("x").get<double>(), j.at("y").get<double>()};
  p.angle = j.at("angle").get<double>();
  p.health = j.at("health").get<int>();
  p.armor = j.at("armor").get<int>();
  p.ammo = j.at("ammo").get<std::array<int, 4>>();
  p.weapons_owned = j.at("weapons").get<std::uint8_t>();
  p.equipped = j.at("equipped").get<int>();
  p.speed_on = j.at("speed").get<bool>();
  return p;
}

json frame_to_json(const FrameRecord& r) {
  json events = json::array();
  for (const auto& e : r.events) events.push_back({std::string(sim::to_string(e.kind)), e.amount, e.entity});
  json calls = json::array();
  for (const auto& c : r.calls) {
    json call{{"profile", c.profile.label()}, {"prompt_hash", c.prompt_hash}, {"completion", c.completion}};
    if (!c.error.empty()) call["error"] = c.error;
    calls.push_back(std::move(call));
  }
  return {{"type", "frame"},
          {"frame", r.frame},
          {"room", std::string(sim::to_string(r.room))},
          {"player", player_to_json(r.player)},
          {"action", r.action ? json(std::string(sim::action_name(*r.action))) : json(nullptr)},
          {"events", std::move(events)},
          {"calls", std::move(calls)}};
}

FrameRecord frame_from_json(const json& j) {
  FrameRecord r;
  r.frame = j.at("frame").get<std::int64_t>();
  const auto room = sim::parse_room_label(j.at("room").get<std::string>());
  if (!room) throw std::invalid_argument("unknown room label");
  r.room = *room;
  r.player = player_from_json(j.at("player"));
  if (!j.at("action").is_null()) {
    const auto a = sim::parse_action_name(j.at("action").get<std::string>());
    if (!a) throw std::invalid_argument("unknown action");
    r.action = *a;
  }
  for (const auto& e : j.at("events")) {
    const auto kind = sim::parse_event_kind(e.at(0).get<std::string>());
    if (!kind) throw std::invalid_argument("unknown event kind");
    r.events.push_back({*kind, e.at(1).get<int>(), e.at(2).get<int>()});
  }
  for (const auto& c : j.at("calls")) {
    const auto profile = llm::Profile::parse(c.at("profile").get<std::string>());
    if (!profile) throw std::invalid_argument("unknown profile");
    r.calls.push_back({*profile, c.at("prompt_hash").get<std::string>(), c.at("completion").get<std::string>(),
                       c.value("error", std::string())});
  }
  return r;
}

}  // namespace

void write_trace(std::ostream& out, const TraceFile& t) {
  const auto& h = t.header;
  out << json{{"type", "header"}, {"version", h.version},   {"strategy", h.strategy},
              {"config", h.config}, {"seed", h.seed},       {"map_hash", h.map_hash}}
             .dump()
      << '\n';
  for (const auto& r : t.trial.frames) out << frame_to_json(r).dump() << '\n';
  json entries = json::array();
  for (const auto& e : t.trial.room_entries) entries.push_back({std::string(sim::to_string(e.room)), e.frame});
  out << json{{"type", "outcome"},
              {"outcome", std::string(orchestrator::to_string(t.trial.outcome))},
              {"seed", t.trial.seed},
              {"room_entries", std::move(entries)},
              {"same_tile_frames", t.trial.same_tile_frames}}
             .dump()
      << '\n';
}

void write_trace_file(const std::filesystem::path& path, const TraceFile& trace) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_trace(out, trace);
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

TraceFile read_trace(std::istream& in) {
  TraceFile t;
  bool have_header = false;
  bool have_outcome = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (have_outcome) throw TraceError(line_no, "record after the outcome record");
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception&) {
      throw TraceError(line_no, "malformed or truncated record");
    }
    try {
      const std::string type = j.at("type").get<std::string>();
      if (!have_header) {
        if (type != "header") throw TraceError(line_no, "expected header record");
        t.header.version = j.at("version").get<int>();
        if (t.header.version != kTraceVersion) {
          throw TraceError(line_no, "unsupported trace version " + std::to_string(t.header.version));
        }
        t.header.strategy = j.at("strategy").get<std::string>();
        t.header.config = j.at("config").get<std::map<std::string, std::string>>();
        t.header.seed = j.at("seed").get<std::uint64_t>();
        t.header.map_hash = j.at("map_hash").get<std::string>();
        have_header = true;
      } else if (type == "frame") {
        FrameRecord r = frame_from_json(j);
        const std::int64_t expected = t.trial.frames.empty() ? 0 : t.trial.frames.back().frame + 1;
        if (r.frame != expected) {
          throw TraceError(line_no, "frame " + std::to_string(r.frame) + " out of order, expected " +
                                        std::to_string(expected));
        }
        t.trial.frames.push_back(std::move(r));
      } else if (type == "outcome") {
        const auto outcome = orchestrator::parse_outcome(j.at("outcome").get<std::string>());
        if (!outcome) throw TraceError(line_no, "unknown outcome");
        t.trial.outcome = *outcome;
        t.trial.seed = j.at("seed").get<std::uint64_t>();
        t.trial.same_tile_frames = j.at("same_tile_frames").get<std::int64_t>();
        for (const auto& e : j.at("room_entries")) {
          const auto room = sim::parse_room_label(e.at(0).get<std::string>());
          if (!room) throw TraceError(line_no, "unknown room label in room_entries");
          t.trial.room_entries.push_back({*room, e.at(1).get<std::int64_t>()});
        }
        have_outcome = true;
      } else {
        throw TraceError(line_no, "unexpected record type '" + type + "'");
      }
    } catch (const json::exception& e) {
      throw TraceError(line_no, std::string("bad record: ") + e.what());
    } catch (const std::invalid_argument& e) {
      throw TraceError(line_no, std::string("bad record: ") + e.what());
    }
  }
  if (!have_header) throw TraceError(0, "empty trace");
  if (!have_outcome) throw TraceError(line_no, "truncated trace: no outcome record");
  return t;
}

TraceFile read_trace_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TraceError(0, "cannot open " + path.string());
  return read_trace(in);
}

}  // namespace llmdoom::trace
