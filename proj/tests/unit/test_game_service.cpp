#include <gtest/gtest.h>

#include <filesystem>
#include <set>

#include "invbench/common/json_util.hpp"
#include "invbench/game/experiment.hpp"
#include "invbench/game/service.hpp"
#include "invbench/policy/chat.hpp"
#include "invbench/sim/metrics.hpp"
#include "invbench/sim/simulator.hpp"

using namespace invbench;
using namespace invbench::game;

namespace {

ServiceConfig base_config(std::shared_ptr<policy::ChatBackend> backend = nullptr) {
  ServiceConfig c;
  c.instances = default_experiment_instances();
  c.backend = backend ? backend : std::shared_ptr<policy::ChatBackend>(policy::MockChatBackend::from_spec("follow-or"));
  c.clock = [] { return std::string("2026-01-01T00:00:00.000Z"); };
  return c;
}

// First token whose assignment puts `mode` on instance `index`.
std::string token_for(GameService& svc, GameMode mode, int index) {
  for (int i = 0; i < 200; ++i) {
    const std::string t = "tok" + std::to_string(i);
    if (svc.create_assignment(t).modes[static_cast<std::size_t>(index)] == mode) return t;
  }
  throw std::runtime_error("no token found");
}

int status_of(const std::function<void()>& f, std::string* code = nullptr) {
  try {
    f();
  } catch (const ServiceError& e) {
    if (code) *code = e.code();
    return e.status();
  }
  return 200;
}

// Replays the recorded orders through a fresh simulator.
double replay(const sim::Instance& in, const std::vector<EventRecord>& events) {
  auto st = sim::new_session(in);
  for (const auto& e : events)
    if (e.kind == "outcome") {
      const auto o = sim::step(st, in, e.payload.at("order").get<double>());
      EXPECT_EQ(o.reward, e.payload.at("reward").get<double>());
      EXPECT_EQ(o.demand, e.payload.at("demand").get<double>());
    }
  return st.cumulative_reward;
}

}  // namespace

TEST(Experiment, DefaultInstances) {
  const auto in = default_experiment_instances();
  ASSERT_EQ(in.size(), 3u);
  for (const auto& i : in) {
    EXPECT_EQ(i.horizon(), 24);
    EXPECT_NEAR(i.critical_fractile(), 0.8, 1e-12);
    EXPECT_NO_THROW(i.validate());
  }
  EXPECT_EQ(in[0].lead_times[0], sim::LeadTime::fixed(0));
  EXPECT_EQ(in[1].lead_times[5], sim::LeadTime::fixed(1));
  EXPECT_EQ(in[2].promised_lead, 1);
  int lost = 0;
  for (const auto& l : in[2].lead_times) lost += l.is_lost();
  EXPECT_GT(lost, 0);
  EXPECT_LT(lost, 24);
  EXPECT_EQ(default_experiment_instances(), in);
}

TEST(Assignment, EveryTokenGetsAPermutationAndHashedIsStable) {
  GameService svc(base_config());
  std::set<std::size_t> seen;
  for (int i = 0; i < 60; ++i) {
    const auto a = svc.create_assignment("p" + std::to_string(i));
    std::set<GameMode> modes(a.modes.begin(), a.modes.end());
    EXPECT_EQ(modes.size(), 3u);
    EXPECT_EQ(a.modes, mode_permutations()[a.permutation]);
    seen.insert(a.permutation);
    EXPECT_EQ(svc.create_assignment("p" + std::to_string(i)).permutation, a.permutation);
  }
  EXPECT_EQ(seen.size(), 6u);
  GameService again(base_config());
  EXPECT_EQ(again.create_assignment("p7").permutation, svc.create_assignment("p7").permutation);
}

TEST(Assignment, BalancedBlocksUseEachOrderingOnce) {
  auto cfg = base_config();
  cfg.assignment = AssignmentPolicy::Balanced;
  GameService svc(cfg);
  for (int block = 0; block < 3; ++block) {
    std::set<std::size_t> perms;
    for (int i = 0; i < 6; ++i) perms.insert(svc.create_assignment("b" + std::to_string(block * 6 + i)).permutation);
    EXPECT_EQ(perms.size(), 6u);
  }
}

TEST(GameService, ModeAFullSessionReplays) {
  GameService svc(base_config());
  const auto token = token_for(svc, GameMode::A, 1);
  auto v = svc.start_session(token, 1);
  EXPECT_EQ(v.at("mode"), "A");
  EXPECT_EQ(v.at("period"), 1);
  EXPECT_EQ(v.at("demand_history").size(), 5u);
  EXPECT_EQ(v.at("demand_history")[0].at("period"), -4);
  EXPECT_FALSE(v.contains("ai_proposal"));
  const std::string id = v.at("session_id");
  while (v.at("status") == "active") v = svc.submit_order(id, v.at("or_recommendation").at("display_quantity"));
  EXPECT_EQ(v.at("period"), 25);
  EXPECT_EQ(v.at("inventory_history").size(), 24u);
  EXPECT_EQ(v.at("demand_history").size(), 29u);
  EXPECT_FALSE(v.contains("or_recommendation"));
  const auto& in = svc.config().instances[1];
  EXPECT_DOUBLE_EQ(replay(in, svc.events(id)), v.at("cumulative_reward").get<double>());
  const double nr = v.at("normalized_reward");
  EXPECT_GT(nr, 0.0);
  EXPECT_LE(nr, 1.0 + 1e-12);

  std::string code;
  EXPECT_EQ(status_of([&] { svc.submit_order(id, 5); }, &code), 409);
  EXPECT_EQ(code, "session_finished");
  const auto av = svc.assignment_view(token);
  EXPECT_EQ(av.at("instances")[1].at("status"), "finished");
  EXPECT_EQ(av.at("instances")[0].at("status"), "not_started");

  const auto lines = parse_jsonl(svc.export_log({token, false, true}));
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0].at("mode"), "H");
  EXPECT_EQ(lines[0].at("scenario"), in.id);
  EXPECT_DOUBLE_EQ(lines[0].at("reward").get<double>(), nr);
}

TEST(GameService, ModeBProposalAndFeedback) {
  auto cfg = base_config(std::shared_ptr<policy::ChatBackend>(policy::MockChatBackend::from_spec("fixed:37")));
  {
    GameService svc(cfg);
    const auto token = token_for(svc, GameMode::B, 0);
    auto v = svc.start_session(token, 0);
    ASSERT_TRUE(v.contains("ai_proposal"));
    EXPECT_EQ(v.at("ai_proposal").at("quantity"), 37.0);
    EXPECT_EQ(v.at("feedback_enabled"), false);
    std::string code;
    EXPECT_EQ(status_of([&] { svc.submit_feedback(v.at("session_id"), "more"); }, &code), 405);
    EXPECT_EQ(code, "feedback_disabled");
    v = svc.submit_order(v.at("session_id"), 12);
    EXPECT_EQ(v.at("period"), 2);
    bool found = false;
    for (const auto& e : svc.events(v.at("session_id").get<std::string>()))
      if (e.kind == "human_order") {
        found = true;
        EXPECT_EQ(e.payload.at("ai_quantity"), 37.0);
        EXPECT_EQ(e.payload.at("quantity"), 12.0);
        EXPECT_TRUE(e.payload.contains("or_quantity"));
      }
    EXPECT_TRUE(found);
  }
  cfg.two_stage_feedback = true;
  GameService svc(cfg);
  const auto token = token_for(svc, GameMode::B, 2);
  auto v = svc.start_session(token, 2);
  const std::string id = v.at("session_id");
  v = svc.submit_feedback(id, "demand looks higher this week");
  EXPECT_EQ(v.at("ai_proposal").at("revised"), true);
  std::string code;
  EXPECT_EQ(status_of([&] { svc.submit_feedback(id, "again"); }, &code), 409);
  EXPECT_EQ(code, "already_revised");
  v = svc.submit_order(id, 3);
  EXPECT_EQ(v.at("ai_proposal").at("revised"), false);
  EXPECT_EQ(status_of([&] { svc.submit_guidance(id, "x"); }), 405);
}

TEST(GameService, ModeBFallsBackToOrWhenAgentFails) {
  struct Broken : policy::ChatBackend {
    policy::ChatResponse complete(const policy::ChatRequest&) override { throw policy::BackendError("down"); }
    std::string describe() const override { return "broken"; }
  };
  GameService svc(base_config(std::make_shared<Broken>()));
  const auto token = token_for(svc, GameMode::B, 0);
  const auto v = svc.start_session(token, 0);
  EXPECT_EQ(v.at("ai_proposal").at("quantity"), v.at("or_recommendation").at("quantity"));
  bool logged = false;
  for (const auto& e : svc.events(v.at("session_id").get<std::string>())) logged |= e.kind == "agent_error";
  EXPECT_TRUE(logged);
}

TEST(GameService, ModeCGuidanceBlocks) {
  auto cfg = base_config();
  cfg.pause_every = 5;
  GameService svc(cfg);
  const auto token = token_for(svc, GameMode::C, 2);
  auto v = svc.start_session(token, 2);
  const std::string id = v.at("session_id");
  EXPECT_EQ(v.at("guidance").at("awaiting"), true);
  EXPECT_EQ(v.at("guidance").at("next_pause_period"), 1);
  EXPECT_FALSE(v.contains("ai_proposal"));
  EXPECT_EQ(status_of([&] { svc.submit_order(id, 10); }), 405);
  EXPECT_EQ(status_of([&] { svc.submit_feedback(id, "x"); }), 405);

  int rounds = 0;
  std::vector<int> played;
  while (v.at("status") == "active") {
    v = svc.submit_guidance(id, rounds == 0 ? "be conservative" : "");
    played.push_back(v.at("auto_played"));
    ++rounds;
  }
  EXPECT_EQ(played, (std::vector<int>{5, 5, 5, 5, 4}));
  EXPECT_EQ(v.at("guidance").at("history").size(), 5u);
  EXPECT_EQ(v.at("guidance").at("history")[1].at("before_period"), 6);
  std::string code;
  EXPECT_EQ(status_of([&] { svc.submit_guidance(id, "late"); }, &code), 409);
  EXPECT_EQ(code, "session_finished");

  int autos = 0;
  for (const auto& e : svc.events(id)) autos += e.kind == "auto_order";
  EXPECT_EQ(autos, 24);
  EXPECT_DOUBLE_EQ(replay(svc.config().instances[2], svc.events(id)), v.at("cumulative_reward").get<double>());
  const auto lines = parse_jsonl(svc.export_log({token, false, true}));
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0].at("mode"), "C");
}

TEST(GameService, RequestErrors) {
  GameService svc(base_config());
  std::string code;
  EXPECT_EQ(status_of([&] { svc.create_assignment(""); }, &code), 400);
  EXPECT_EQ(status_of([&] { svc.create_assignment(std::string(129, 'x')); }), 400);
  EXPECT_EQ(status_of([&] { svc.start_session("nobody", 0); }, &code), 404);
  EXPECT_EQ(code, "assignment_not_found");
  EXPECT_EQ(status_of([&] { svc.assignment_view("nobody"); }), 404);
  EXPECT_EQ(status_of([&] { svc.session_view("s999"); }, &code), 404);
  EXPECT_EQ(code, "session_not_found");
  const auto token = token_for(svc, GameMode::A, 0);
  EXPECT_EQ(status_of([&] { svc.start_session(token, 3); }, &code), 400);
  EXPECT_EQ(code, "invalid_instance_index");
  const std::string id = svc.start_session(token, 0).at("session_id");
  try {
    svc.start_session(token, 0);
    FAIL();
  } catch (const ServiceError& e) {
    EXPECT_EQ(e.status(), 409);
    EXPECT_EQ(e.details().at("session_id"), id);
  }
  for (const Json& bad : {Json(-1), Json(2.5), Json("ten"), Json(nullptr), Json(1e13)}) {
    EXPECT_EQ(status_of([&] { svc.submit_order(id, bad); }, &code), 400) << bad.dump();
    EXPECT_EQ(code, "invalid_quantity");
  }
  EXPECT_EQ(svc.session_view(id).at("period"), 1);
  EXPECT_EQ(svc.submit_order(id, 0).at("period"), 2);
}

TEST(GameService, LogFileIsFlushedJsonLines) {
  const auto path = std::filesystem::temp_directory_path() / "invbench_game_log_test.jsonl";
  std::filesystem::remove(path);
  auto cfg = base_config();
  cfg.log_path = path;
  GameService svc(cfg);
  const auto token = token_for(svc, GameMode::A, 0);
  const std::string id = svc.start_session(token, 0).at("session_id");
  svc.submit_order(id, 20);
  const auto lines = read_jsonl(path);  // read while the service is alive
  ASSERT_EQ(lines.size(), svc.events().size());
  std::uint64_t prev = 0;
  std::set<std::string> kinds;
  for (const auto& l : lines) {
    EXPECT_EQ(l.at("record"), "event");
    EXPECT_GT(l.at("seq").get<std::uint64_t>(), prev);
    prev = l.at("seq");
    EXPECT_EQ(l.at("timestamp"), "2026-01-01T00:00:00.000Z");
    kinds.insert(l.at("kind").get<std::string>());
  }
  for (const char* k : {"assignment", "session_start", "observe", "or_advice", "human_order", "outcome"})
    EXPECT_TRUE(kinds.count(k)) << k;
  std::filesystem::remove(path);
}

TEST(GameService, ConstructorValidates) {
  auto cfg = base_config();
  cfg.instances.pop_back();
  EXPECT_ANY_THROW(GameService{cfg});
  cfg = base_config();
  cfg.pause_every = 0;
  EXPECT_ANY_THROW(GameService{cfg});
  cfg = base_config();
  cfg.backend = nullptr;
  EXPECT_ANY_THROW(GameService{cfg});
}
