#include <doctest.h>

#include <random>
#include <sstream>

#include "llmdoom/trace/trace.hpp"
#include "test_support.hpp"

using namespace llmdoom;

namespace {

trace::TraceFile random_trace(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 60.0);
  const auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  trace::TraceFile tf;
  tf.header.strategy = std::string(prompt::to_string(static_cast<prompt::Strategy>(pick(4))));
  tf.header.seed = rng();
  tf.header.map_hash = "0123456789abcdef";
  tf.header.config = {{"max_frames", std::to_string(pick(9000))}, {"note", "quote \" and \\ and é"}};
  auto& t = tf.trial;
  t.seed = tf.header.seed;
  const int frames = pick(60);
  for (int f = 0; f < frames; ++f) {
    orchestrator::FrameRecord r;
    r.frame = f;
    r.room = static_cast<sim::RoomLabel>(pick(6));
    r.player.pos = {u(rng), u(rng) / 3.0};
    r.player.angle = u(rng) * 6.0;
    r.player.health = pick(101);
    r.player.armor = pick(201);
    r.player.ammo = {pick(200), pick(5), pick(5), pick(200)};
    r.player.weapons_owned = static_cast<std::uint8_t>(pick(128));
    r.player.equipped = 1 + pick(7);
    r.player.speed_on = pick(2) == 1;
    if (pick(3) > 0) r.action = sim::kAllActions[static_cast<std::size_t>(pick(17))];
    for (int e = pick(3); e > 0; --e) {
      r.events.push_back({static_cast<sim::EventKind>(pick(11)), pick(60), pick(4) - 1});
    }
    for (int c = pick(3); c > 0; --c) {
      const llm::Profile profiles[] = {llm::Profile::agent(), llm::Profile::planner(), llm::Profile::expert(1 + pick(3))};
      r.calls.push_back({profiles[pick(3)], "feedfacecafebeef", pick(2) ? "UP\nline \"two\"\t\x01" : "",
                         pick(2) ? "" : "timeout"});
    }
    t.frames.push_back(std::move(r));
    if (pick(10) == 0) t.room_entries.push_back({static_cast<sim::RoomLabel>(1 + pick(4)), f});
  }
  t.outcome = static_cast<orchestrator::Outcome>(pick(3));
  t.same_tile_frames = pick(2000);
  return tf;
}

std::string serialise(const trace::TraceFile& tf) {
  std::ostringstream out;
  trace::write_trace(out, tf);
  return out.str();
}

std::string read_error(const std::string& text) {
  std::istringstream in(text);
  try {
    trace::read_trace(in);
  } catch (const trace::TraceError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("trace round-trip on random trials") {
  std::mt19937_64 rng(50);
  for (int i = 0; i < 50; ++i) {
    const auto tf = random_trace(rng);
    const auto text = serialise(tf);
    std::istringstream in(text);
    const auto back = trace::read_trace(in);
    CHECK(back == tf);
    CHECK(serialise(back) == text);
  }
}

TEST_CASE("trace files round-trip through the filesystem") {
  std::mt19937_64 rng(1);
  const auto tf = random_trace(rng);
  testing::TempDir dir("trace");
  trace::write_trace_file(dir.path() / "a.jsonl", tf);
  CHECK(trace::read_trace_file(dir.path() / "a.jsonl") == tf);
  CHECK_THROWS_AS(trace::read_trace_file(dir.path() / "missing.jsonl"), std::runtime_error);
}

TEST_CASE("corrupt traces report the failing line") {
  std::mt19937_64 rng(2);
  auto tf = random_trace(rng);
  while (tf.trial.frames.size() < 3) tf = random_trace(rng);
  const auto text = serialise(tf);
  const auto lines = static_cast<int>(std::count(text.begin(), text.end(), '\n'));

  // Final line cut in half.
  const auto last_start = text.rfind('\n', text.size() - 2) + 1;
  const auto cut = text.substr(0, last_start + (text.size() - last_start) / 2);
  CHECK(read_error(cut).starts_with("line " + std::to_string(lines) + ":"));

  // Outcome record missing entirely.
  CHECK(read_error(text.substr(0, last_start)).find("no outcome") != std::string::npos);

  // Version from the future.
  auto v99 = text;
  v99.replace(v99.find("\"version\":1"), 11, "\"version\":99");
  const auto err = read_error(v99);
  CHECK(err.starts_with("line 1:"));
  CHECK(err.find("version") != std::string::npos);

  // Frames out of order.
  auto swapped = text;
  const auto f1 = swapped.find("\"frame\":1,");
  REQUIRE(f1 != std::string::npos);
  swapped.replace(f1, 10, "\"frame\":7,");
  CHECK(read_error(swapped).starts_with("line 3:"));

  // Anything after the outcome.
  CHECK(read_error(text + text.substr(last_start)).starts_with("line " + std::to_string(lines + 1) + ":"));
  CHECK_FALSE(read_error("").empty());
}

TEST_CASE("config snapshot never carries secrets") {
  orchestrator::RunConfig cfg;
  cfg.backend.kind = llm::BackendKind::Http;
  cfg.backend.endpoint = "http://127.0.0.1:1/v1";
  cfg.backend.api_key_env = "MY_KEY_VAR";
  const auto snap = trace::config_snapshot(cfg);
  CHECK(snap.at("api_key_env") == "MY_KEY_VAR");
  for (const auto& [k, v] : snap) CHECK((k.find("key") == std::string::npos || k == "api_key_env"));
}
