#include <gtest/gtest.h>

#include "invbench/game/experiment.hpp"
#include "invbench/policy/chat.hpp"
#include "support/game_server.hpp"

using namespace invbench;
using namespace invbench::game;
using invbench::testing::GameServer;

namespace {

ServiceConfig config(bool feedback = false) {
  ServiceConfig c;
  c.instances = default_experiment_instances();
  c.backend = std::shared_ptr<policy::ChatBackend>(policy::MockChatBackend::from_spec("follow-or"));
  c.two_stage_feedback = feedback;
  c.pause_every = 6;
  return c;
}

// Index of `mode` in the token's assignment.
int slot_of(const Json& assignment, const std::string& mode) {
  for (const auto& s : assignment.at("instances"))
    if (s.at("mode") == mode) return s.at("instance_index");
  return -1;
}

}  // namespace

TEST(HttpApi, HealthAndCors) {
  GameServer srv(config());
  const auto h = srv.get("/api/v1/health");
  EXPECT_EQ(h.status, 200);
  EXPECT_EQ(h.body.at("status"), "ok");
  EXPECT_EQ(h.body.at("instances").size(), 3u);

  const auto opt = srv.client().Options("/api/v1/sessions");
  ASSERT_TRUE(opt);
  EXPECT_EQ(opt->status, 204);
  EXPECT_EQ(opt->get_header_value("Access-Control-Allow-Origin"), "*");
  EXPECT_NE(opt->get_header_value("Access-Control-Allow-Methods").find("POST"), std::string::npos);
}

TEST(HttpApi, UnknownRouteAndBadJson) {
  GameServer srv(config());
  const auto nf = srv.get("/api/v1/nope");
  EXPECT_EQ(nf.status, 404);
  EXPECT_EQ(nf.body.at("error").at("code"), "not_found");
  const auto bad = srv.post_raw("/api/v1/assignments", "{not json");
  EXPECT_EQ(bad.status, 400);
  EXPECT_TRUE(bad.body.at("error").contains("message"));
  EXPECT_EQ(srv.post("/api/v1/assignments", Json::object()).status, 400);
}

TEST(HttpApi, ModeASessionOverHttp) {
  GameServer srv(config());
  const auto a = srv.post("/api/v1/assignments", {{"token", "alice"}});
  ASSERT_EQ(a.status, 201);
  const auto again = srv.post("/api/v1/assignments", {{"token", "alice"}});
  EXPECT_EQ(again.body.at("permutation"), a.body.at("permutation"));
  const auto view = srv.get("/api/v1/assignments/alice");
  ASSERT_EQ(view.status, 200);
  EXPECT_EQ(srv.get("/api/v1/assignments/bob").status, 404);

  const int idx = slot_of(view.body, "A");
  auto s = srv.post("/api/v1/sessions", {{"token", "alice"}, {"instance_index", idx}});
  ASSERT_EQ(s.status, 201);
  const std::string id = s.body.at("session_id");
  const auto dup = srv.post("/api/v1/sessions", {{"token", "alice"}, {"instance_index", idx}});
  EXPECT_EQ(dup.status, 409);
  EXPECT_EQ(dup.body.at("error").at("details").at("session_id"), id);
  EXPECT_EQ(srv.post("/api/v1/sessions", {{"token", "alice"}, {"instance_index", 7}}).status, 400);
  EXPECT_EQ(srv.get("/api/v1/sessions/s404404").status, 404);

  EXPECT_EQ(srv.post("/api/v1/sessions/" + id + "/orders", {{"quantity", -3}}).status, 400);
  EXPECT_EQ(srv.post("/api/v1/sessions/" + id + "/orders", {{"quantity", "many"}}).status, 400);
  EXPECT_EQ(srv.post("/api/v1/sessions/" + id + "/guidance", {{"text", "hi"}}).status, 405);

  Json v = s.body;
  int steps = 0;
  while (v.at("status") == "active") {
    const auto r = srv.post("/api/v1/sessions/" + id + "/orders",
                            {{"quantity", v.at("or_recommendation").at("display_quantity")}});
    ASSERT_EQ(r.status, 200);
    v = r.body;
    ++steps;
  }
  EXPECT_EQ(steps, 24);
  EXPECT_EQ(srv.post("/api/v1/sessions/" + id + "/orders", {{"quantity", 1}}).status, 409);
  EXPECT_EQ(srv.get("/api/v1/sessions/" + id).body, v);

  const auto log = srv.get("/api/v1/log?token=alice&events=false");
  EXPECT_EQ(log.status, 200);
  EXPECT_EQ(log.content_type.rfind("application/x-ndjson", 0), 0u);
  const auto lines = parse_jsonl(log.raw);
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0].at("mode"), "H");
  EXPECT_EQ(lines[0].at("participant"), "alice");
}

TEST(HttpApi, ModeBFeedbackAndModeCGuidance) {
  GameServer srv(config(true));
  const auto a = srv.post("/api/v1/assignments", {{"token", "carol"}});
  ASSERT_EQ(a.status, 201);
  const auto view = srv.get("/api/v1/assignments/carol").body;

  const auto b = srv.post("/api/v1/sessions", {{"token", "carol"}, {"instance_index", slot_of(view, "B")}});
  ASSERT_EQ(b.status, 201);
  EXPECT_TRUE(b.body.contains("ai_proposal"));
  EXPECT_EQ(b.body.at("feedback_enabled"), true);
  const std::string bid = b.body.at("session_id");
  const auto fb = srv.post("/api/v1/sessions/" + bid + "/feedback", {{"text", "consider the holiday"}});
  EXPECT_EQ(fb.status, 200);
  EXPECT_EQ(fb.body.at("ai_proposal").at("revised"), true);
  EXPECT_EQ(srv.post("/api/v1/sessions/" + bid + "/feedback", {{"text", "again"}}).status, 409);

  const auto c = srv.post("/api/v1/sessions", {{"token", "carol"}, {"instance_index", slot_of(view, "C")}});
  ASSERT_EQ(c.status, 201);
  const std::string cid = c.body.at("session_id");
  EXPECT_EQ(srv.post("/api/v1/sessions/" + cid + "/orders", {{"quantity", 1}}).status, 405);
  Json v = c.body;
  int rounds = 0;
  while (v.at("status") == "active") {
    const auto r = srv.post("/api/v1/sessions/" + cid + "/guidance", {{"text", "steady"}});
    ASSERT_EQ(r.status, 200);
    v = r.body;
    EXPECT_EQ(v.at("auto_played"), 6);
    ++rounds;
  }
  EXPECT_EQ(rounds, 4);

  const auto log = parse_jsonl(srv.get("/api/v1/log?samples=false").raw);
  int guidance = 0, feedback = 0;
  for (const auto& l : log) {
    EXPECT_EQ(l.at("record"), "event");
    guidance += l.at("kind") == "guidance";
    feedback += l.at("kind") == "feedback";
  }
  EXPECT_EQ(guidance, 4);
  EXPECT_EQ(feedback, 1);
}
