#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "llmdoom/llm/backend.hpp"
#include "llmdoom/prompt/prompt.hpp"
#include "llmdoom/sim/world.hpp"

namespace llmdoom::orchestrator {

using prompt::ExpertMove;
using prompt::merge_expert_moves;

// First line, trimmed, upper-cased, trailing punctuation removed, then matched
// against the canonical tokens. Anything else (including GAME OVER) is WAIT.
sim::Action parse_action(std::string_view completion);

// Motion actions hold for three ticks, WAIT leaves two empty ticks, the rest
// press once.
std::vector<sim::PressInput> expand_action(sim::Action action);

struct CallSet {
  bool agent = false;
  bool planner = false;
  bool experts = false;

  bool any() const { return agent || planner || experts; }
  friend bool operator==(const CallSet&, const CallSet&) = default;
};

CallSet cadence_due(std::int64_t frame, const prompt::StrategyConfig& cfg);

// Counts consecutive frames spent in the same tile.
class StuckDetector {
 public:
  explicit StuckDetector(std::int64_t timeout_frames) : timeout_(timeout_frames) {}

  // Records one frame; returns stuck().
  bool observe(sim::Cell tile);
  bool stuck() const { return count_ > timeout_; }
  std::int64_t count() const { return count_; }

 private:
  std::int64_t timeout_;
  std::int64_t count_ = 0;
  std::optional<sim::Cell> tile_;
};

enum class Outcome { Finished, Died, TimedOut };

std::string_view to_string(Outcome o);
std::optional<Outcome> parse_outcome(std::string_view text);

struct CallRecord {
  llm::Profile profile;
  std::string prompt_hash;  // FNV-1a 64 hex of the bundle
  std::string completion;   // empty when the call failed
  std::string error;        // backend error message, empty on success
  friend bool operator==(const CallRecord&, const CallRecord&) = default;
};

struct FrameRecord {
  std::int64_t frame = 0;
  sim::RoomLabel room = sim::RoomLabel::None;  // after the tick
  sim::PlayerState player;                     // after the tick
  sim::PressInput action;                      // press applied this frame
  sim::EventList events;
  std::vector<CallRecord> calls;  // in issue order: experts, planner, agent
  friend bool operator==(const FrameRecord&, const FrameRecord&) = default;
};

struct RoomEntry {
  sim::RoomLabel room = sim::RoomLabel::A;
  std::int64_t frame = 0;
  friend bool operator==(const RoomEntry&, const RoomEntry&) = default;
};

struct Trial {
  std::uint64_t seed = 0;
  std::vector<FrameRecord> frames;
  std::vector<RoomEntry> room_entries;  // labeled rooms A-D only
  Outcome outcome = Outcome::TimedOut;
  std::int64_t same_tile_frames = 0;  // stuck counter at the end of the trial
  friend bool operator==(const Trial&, const Trial&) = default;
};

struct RunConfig {
  prompt::StrategyConfig strategy;
  std::uint64_t seed = 0;
  std::int64_t max_frames = 5000;
  std::int64_t stuck_timeout_frames = 1000;
  int trials = 10;
  llm::BackendConfig backend;
  std::filesystem::path map_path;
  std::filesystem::path data_dir;
  std::filesystem::path walkthrough_path;

  // Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

std::string prompt_hash(const prompt::PromptBundle& bundle);

// Everything a trial reads but never modifies; shareable across threads.
struct TrialAssets {
  sim::TileMap map;
  prompt::PromptLibrary library;
  std::vector<prompt::WalkthroughStep> walkthrough;

  // Map from cfg.map_path, templates from cfg.data_dir, walkthrough from
  // cfg.walkthrough_path. Empty paths fall back to the bundled data.
  static TrialAssets load(const RunConfig& cfg);
};

// Plan text the Experts see before the first Planner call.
inline constexpr std::string_view kNoPlanYet = "1. No plan yet; follow the walkthrough.";

Trial run_trial(const RunConfig& cfg, const TrialAssets& assets, llm::CompletionBackend& backend,
                std::uint64_t seed);

}  // namespace llmdoom::orchestrator
