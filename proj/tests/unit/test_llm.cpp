#include <doctest.h>

#include <json.hpp>

#include "llmdoom/llm/backend.hpp"
#include "llmdoom/llm/scripted.hpp"
#include "llmdoom/trace/trace.hpp"
#include "test_support.hpp"

using namespace llmdoom;
using llm::PolicyInput;
using scene::Bearing;
using scene::DistanceBucket;
using scene::SeenThing;

namespace {

PolicyInput seeing(std::vector<SeenThing> things) {
  PolicyInput in;
  in.observation = scene::Observation{};
  in.observation->things = std::move(things);
  return in;
}

llm::CompletionRequest request_for(llm::Profile profile, std::string user = "state") {
  const auto s = llm::sampling_for(profile.kind);
  return {{{"system", "sys"}, {"user", std::move(user)}}, s.temperature, s.max_tokens, profile};
}

}  // namespace

TEST_CASE("profile sampling table and labels") {
  CHECK(llm::sampling_for(llm::ProfileKind::Agent) == llm::SamplingParams{0.9, 25});
  CHECK(llm::sampling_for(llm::ProfileKind::Expert) == llm::SamplingParams{0.9, 25});
  CHECK(llm::sampling_for(llm::ProfileKind::Planner) == llm::SamplingParams{0.1, 150});
  CHECK(llm::sampling_for(llm::ProfileKind::Vision) == llm::SamplingParams{0.1, 2880});
  for (const auto& p : {llm::Profile::agent(), llm::Profile::planner(), llm::Profile::expert(3), llm::Profile::vision()}) {
    CHECK(llm::Profile::parse(p.label()) == p);
  }
  CHECK(llm::Profile::expert(2).label() == "Expert2");
  CHECK_FALSE(llm::Profile::parse("Boss").has_value());
}

TEST_CASE("request validation enforces the profile boundary") {
  CHECK_NOTHROW(request_for(llm::Profile::agent()).validate());
  auto r = request_for(llm::Profile::agent());
  r.temperature = 0.1;
  CHECK_THROWS_AS(r.validate(), llm::InvalidRequest);
  r = request_for(llm::Profile::planner());
  r.max_tokens = 25;
  CHECK_THROWS_AS(r.validate(), llm::InvalidRequest);
  r = request_for(llm::Profile::agent());
  r.messages.erase(r.messages.begin());
  CHECK_THROWS_AS(r.validate(), llm::InvalidRequest);
  r.messages.clear();
  CHECK_THROWS_AS(r.validate(), llm::InvalidRequest);
  llm::ScriptedBackend backend;
  auto bad = request_for(llm::Profile::vision());
  bad.temperature = 0.9;
  CHECK_THROWS_AS(backend.complete(bad), llm::InvalidRequest);
}

TEST_CASE("chat request body follows the wire schema") {
  const auto body = nlohmann::json::parse(llm::chat_request_body("m1", request_for(llm::Profile::planner(), "hi")));
  CHECK(body == nlohmann::json{{"model", "m1"},
                               {"messages", {{{"role", "system"}, {"content", "sys"}}, {{"role", "user"}, {"content", "hi"}}}},
                               {"temperature", 0.1},
                               {"max_tokens", 150}});
}

TEST_CASE("backend config validation") {
  llm::BackendConfig c;
  CHECK_NOTHROW(c.validate());
  c.kind = llm::BackendKind::Http;
  CHECK_THROWS(c.validate());  // no endpoint
  c.endpoint = "http://127.0.0.1:1/v1";
  c.model = "m";
  CHECK_NOTHROW(c.validate());
  c.retries = -1;
  CHECK_THROWS(c.validate());
  CHECK(llm::parse_backend_kind("replay") == llm::BackendKind::Replay);
  CHECK_FALSE(llm::parse_backend_kind("magic").has_value());
}

TEST_CASE("http backend reports an unreachable endpoint as unavailable") {
  llm::BackendConfig c;
  c.kind = llm::BackendKind::Http;
  c.endpoint = "http://127.0.0.1:9/v1";  // discard port, nothing listens
  c.model = "m";
  c.timeout_s = 1;
  c.retries = 1;
  c.retry_backoff_s = 0.01;
  llm::HttpBackend b(c);
  CHECK_THROWS_AS(b.complete(request_for(llm::Profile::agent())), llm::BackendUnavailable);
}

TEST_CASE("scripted policy rule order") {
  CHECK(llm::scripted_policy(PolicyInput{}) == "WAIT");
  CHECK(llm::scripted_policy(seeing({{"zombieman", DistanceBucket::Near, Bearing::Centre, false}})) == "FIRE");
  CHECK(llm::scripted_policy(seeing({{"imp", DistanceBucket::Mid, Bearing::Left, false}})) == "LEFT");
  CHECK(llm::scripted_policy(seeing({{"imp", DistanceBucket::Mid, Bearing::Right, false}})) == "RIGHT");

  auto flip = seeing({{"imp", DistanceBucket::Mid, Bearing::Left, false}});
  flip.recent_actions = {"RIGHT"};
  CHECK(llm::scripted_policy(flip) == "UP");
  flip.observation->things[0].within_reach = true;
  CHECK(llm::scripted_policy(flip) == "FIRE");

  auto hurt = seeing({});
  hurt.observation->hurt = true;
  CHECK(llm::scripted_policy(hurt) == "RIGHT");
  hurt.observation->on_acid = true;
  CHECK(llm::scripted_policy(hurt) == "UP");

  CHECK(llm::scripted_policy(seeing({{"closed door", DistanceBucket::Near, Bearing::Centre, true}})) == "USE");
  CHECK(llm::scripted_policy(seeing({{"switch", DistanceBucket::Near, Bearing::Centre, true}})) == "USE");

  auto blocked = seeing({});
  blocked.observation->blocked = true;
  CHECK(llm::scripted_policy(blocked) == "STRAFE LEFT");
  blocked.recent_actions = {"STRAFE LEFT"};
  CHECK(llm::scripted_policy(blocked) == "UP");

  auto plan = seeing({{"closed door", DistanceBucket::Far, Bearing::Right, false}});
  plan.plan_steps = {"Walk UP to the nearest closed door and USE it."};
  CHECK(llm::scripted_policy(plan) == "RIGHT");
  plan.observation->things[0].bearing = Bearing::Centre;
  CHECK(llm::scripted_policy(plan) == "UP");
  auto search = seeing({});
  search.plan_steps = {"If nothing useful is in view, turn RIGHT to search for a door."};
  CHECK(llm::scripted_policy(search) == "RIGHT");
  CHECK(llm::scripted_policy(seeing({})) == "UP");
}

TEST_CASE("agent prompt parsing reads the live state, plan and history") {
  const std::string user =
      "# Examples:\nState:\nYou see an imp (near, centre).\n\nHUD:\nhealth_pct: 1\n|Action|\nFIRE\n\n"
      "Play begins here!\n|History|\n[0] hp 100 -> UP | go\n[2] hp 100 -> STRAFE LEFT | dodge\n\n"
      "State:\nYou are in a narrow hallway.\nSomething is blocking your way.\n\nHUD:\n"
      "current_ammo: 50\nhealth_pct: 100\nowned_weapon_slots: 1 2 | unavailable: 3 4 5 6 7\narmor_pct: 0\n"
      "BULL: 50\nSHEL: 0\nROCK: 0\nCELL: 0\n\nPlan:\n1. Walk UP to the switch and USE it.\n2. Turn RIGHT.\n\n|Action|";
  const auto in = llm::parse_agent_prompt(user);
  REQUIRE(in.observation);
  CHECK(in.observation->blocked);
  CHECK(in.observation->things.empty());
  CHECK(in.recent_actions == std::vector<std::string>{"UP", "STRAFE LEFT"});
  CHECK(in.plan_steps == std::vector<std::string>{"Walk UP to the switch and USE it.", "Turn RIGHT."});
  // Blocked, but STRAFE LEFT was the last action; the switch is not in view, so step 2 applies.
  CHECK(llm::scripted_policy(in) == "RIGHT");
  CHECK_FALSE(llm::parse_agent_prompt("Play begins here!\nState:\ngarbage\n|Action|").observation.has_value());
}

TEST_CASE("scripted planner lists targets from the state") {
  const std::string user =
      "Walkthrough:\n1. go\n\n|History|\n\n\nState:\nYou see a zombieman (mid, left).\nYou see an open doorway (far, centre).\n\n"
      "HUD:\ncurrent_ammo: 50\nhealth_pct: 100\nowned_weapon_slots: 1 2 | unavailable: 3 4 5 6 7\narmor_pct: 0\n"
      "BULL: 50\nSHEL: 0\nROCK: 0\nCELL: 0\n\n|Plan|";
  const auto plan = llm::scripted_plan(user);
  CHECK(plan.starts_with("1. Shoot the zombieman.\n2. Go through the open doorway.\n3. Walk UP to the switch"));
  llm::ScriptedBackend b;
  CHECK(b.complete(request_for(llm::Profile::planner(), user)) == plan);
  CHECK(b.complete(request_for(llm::Profile::planner(), user)) == plan);
}

TEST_CASE("replay returns recorded completions in order, then runs dry") {
  testing::TempDir dir("replay");
  trace::TraceFile tf;
  tf.header.strategy = "naive";
  for (int f = 0; f < 6; ++f) {
    orchestrator::FrameRecord r;
    r.frame = f;
    if (f % 2 == 0) r.calls.push_back({llm::Profile::agent(), "h", "entry " + std::to_string(f / 2 + 1), ""});
    if (f == 0) r.calls.push_back({llm::Profile::planner(), "h", "1. plan", ""});
    tf.trial.frames.push_back(r);
  }
  const auto path = dir.path() / "t.jsonl";
  trace::write_trace_file(path, tf);
  llm::ReplayBackend b(path);
  CHECK(b.remaining(llm::Profile::agent()) == 3);
  CHECK(b.remaining(llm::Profile::expert(1)) == 0);
  CHECK(b.complete(request_for(llm::Profile::agent())) == "entry 1");
  CHECK(b.complete(request_for(llm::Profile::planner())) == "1. plan");
  CHECK(b.complete(request_for(llm::Profile::agent())) == "entry 2");
  CHECK(b.complete(request_for(llm::Profile::agent())) == "entry 3");
  CHECK_THROWS_AS(b.complete(request_for(llm::Profile::agent())), llm::ReplayExhausted);
  CHECK_THROWS_AS(llm::ReplayBackend(dir.path() / "missing.jsonl"), llm::InvalidRequest);
}
