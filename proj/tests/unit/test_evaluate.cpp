#include <gtest/gtest.h>

#include <cmath>

#include "invbench/common/error.hpp"
#include "invbench/eval/aggregate.hpp"
#include "invbench/eval/record_store.hpp"
#include "invbench/eval/report.hpp"
#include "invbench/eval/runner.hpp"
#include "invbench/instances/benchmark.hpp"
#include "invbench/policy/chat.hpp"

using namespace invbench;
using namespace invbench::eval;

namespace {

const std::vector<sim::Instance>& some_instances() {
  static const auto sample = [] {
    const auto all = instances::build_benchmark();
    std::vector<sim::Instance> out;
    for (std::size_t i = 0; i < all.size(); i += 24) out.push_back(all[i]);  // 30 instances
    return out;
  }();
  return sample;
}

policy::Agent or_agent() { return policy::Agent(policy::AgentConfig{policy::Method::OR, nullptr, 0.0, 1, "or"}); }

policy::Agent mock_agent(const std::string& spec, policy::Method m = policy::Method::OR_TO_LLM) {
  return policy::Agent(policy::AgentConfig{m, policy::MockChatBackend::from_spec(spec), 0.0, 1, "mock:" + spec});
}

class DownBackend : public policy::ChatBackend {
 public:
  policy::ChatResponse complete(const policy::ChatRequest&) override { throw policy::BackendError("offline"); }
  std::string describe() const override { return "down"; }
};

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("invbench_eval_" + name);
  std::filesystem::remove_all(p);
  return p;
}

ResultRecord rec(const std::string& method, const std::string& pattern, const std::string& lead, double reward,
                 const std::string& family = "synthetic", double rho = 0.5) {
  ResultRecord r;
  r.instance_id = method + pattern + lead + std::to_string(reward);
  r.method = method;
  r.family = family;
  r.pattern = pattern;
  r.lead = lead;
  r.rho = rho;
  r.normalized_reward = reward;
  r.implicit_fractile = reward / 2;
  return r;
}

}  // namespace

TEST(Runner, EpisodeRecordFields) {
  const auto& in = some_instances()[3];
  const auto ep = run_episode(in, or_agent());
  EXPECT_TRUE(ep.record.ok);
  EXPECT_EQ(ep.record.periods_completed, 50);
  EXPECT_EQ(ep.record.instance_id, in.id);
  EXPECT_EQ(ep.record.lead, in.provenance.lead_config);
  EXPECT_DOUBLE_EQ(ep.record.normalized_reward, sim::normalized_reward(ep.trajectory, in));
  EXPECT_DOUBLE_EQ(ep.record.rho, in.critical_fractile());
}

TEST(Runner, ParallelMatchesSerial) {
  const std::vector<policy::Agent> agents = {or_agent(), mock_agent("follow-or")};
  RunOptions serial;
  RunOptions parallel;
  parallel.parallelism = 4;
  const auto a = run_benchmark(some_instances(), agents, serial);
  const auto b = run_benchmark(some_instances(), agents, parallel);
  ASSERT_EQ(a.records.size(), 60u);
  for (std::size_t i = 0; i < a.records.size(); ++i)
    EXPECT_EQ(record_to_json(a.records[i]), record_to_json(b.records[i])) << i;
}

TEST(Runner, FollowOrRecordsEqualOrRecords) {
  const auto s = run_benchmark(some_instances(), {or_agent(), mock_agent("follow-or")});
  for (std::size_t i = 0; i < s.records.size(); i += 2)
    EXPECT_EQ(s.records[i].total_reward, s.records[i + 1].total_reward) << s.records[i].instance_id;
}

TEST(Runner, ResumeSkipsFinishedEpisodes) {
  const auto path = scratch("resume.jsonl");
  {
    RecordStore store(path);
    RunOptions o;
    o.store = &store;
    const std::vector<sim::Instance> half(some_instances().begin(), some_instances().begin() + 10);
    EXPECT_EQ(run_benchmark(half, {or_agent()}, o).resumed, 0u);
  }
  RecordStore store(path);
  RunOptions o;
  o.store = &store;
  const auto s = run_benchmark(some_instances(), {or_agent()}, o);
  EXPECT_EQ(s.resumed, 10u);
  EXPECT_EQ(s.records.size(), 30u);
  EXPECT_EQ(load_records(path).size(), 30u);
}

TEST(Runner, FailuresAreRecordedAndCountedAgainstThreshold) {
  const policy::Agent down(policy::AgentConfig{policy::Method::LLM, std::make_shared<DownBackend>(), 0.0, 1, "down"});
  RunOptions o;
  o.max_failure_fraction = 0.4;
  const std::vector<sim::Instance> few(some_instances().begin(), some_instances().begin() + 3);
  const auto s = run_benchmark(few, {or_agent(), down}, o);
  EXPECT_EQ(s.failures, 3u);
  EXPECT_TRUE(s.over_threshold);  // 3 of 6 failed
  for (const auto& r : s.records)
    if (r.method == "down") {
      EXPECT_FALSE(r.ok);
      EXPECT_NE(r.error.find("offline"), std::string::npos);
    }
  o.max_failure_fraction = 0.5;
  EXPECT_FALSE(run_benchmark(few, {or_agent(), down}, o).over_threshold);
}

TEST(RecordStore, LaterLinesWinAndFailedRecordsAreNotReused) {
  const auto path = scratch("store.jsonl");
  {
    RecordStore store(path);
    auto r = rec("or", "p01", "L0", 0.3);
    store.append(r);
    r.normalized_reward = 0.6;
    store.append(r);
    auto bad = rec("llm", "p01", "L0", 0.0);
    bad.ok = false;
    store.append(bad);
  }
  RecordStore again(path);
  const auto r = rec("or", "p01", "L0", 0.3);
  ASSERT_TRUE(again.find(r.instance_id, "or").has_value());
  EXPECT_EQ(again.find(r.instance_id, "or")->normalized_reward, 0.6);
  EXPECT_FALSE(again.find(rec("llm", "p01", "L0", 0.0).instance_id, "llm").has_value());
  EXPECT_EQ(again.records().size(), 2u);
}

TEST(RecordStore, JsonRoundTrip) {
  auto r = rec("or_to_llm", "p07", "LS", 0.71, "synthetic", 0.95);
  r.fallbacks = 2;
  r.llm_calls = 53;
  r.seed = 99;
  EXPECT_EQ(record_to_json(record_from_json(record_to_json(r))), record_to_json(r));
}

TEST(Aggregate, MeanAndNormalInterval) {
  const auto s = mean_ci({0.2, 0.4, 0.9});
  EXPECT_DOUBLE_EQ(s.mean, 0.5);
  // sample sd = sqrt(((0.3)^2 + (0.1)^2 + (0.4)^2) / 2) = sqrt(0.13)
  EXPECT_NEAR(s.half_width, 1.96 * std::sqrt(0.13) / std::sqrt(3.0), 1e-15);
  EXPECT_EQ(mean_ci({0.7}).half_width, 0.0);
}

TEST(Aggregate, GroupsByFacetsAndExcludesFailures) {
  std::vector<ResultRecord> rs = {rec("or", "p01", "L0", 0.8), rec("or", "p01", "L0", 0.6), rec("or", "p02", "L0", 0.5),
                                  rec("llm", "p01", "L0", 0.4)};
  auto failed = rec("llm", "p01", "L0", 0.0);
  failed.ok = false;
  rs.push_back(failed);
  const auto cells = aggregate(rs, {Facet::Method, Facet::Pattern});
  ASSERT_EQ(cells.size(), 3u);
  const auto& llm = *std::find_if(cells.begin(), cells.end(), [](const AggregateCell& c) { return c.key[0] == "llm"; });
  EXPECT_EQ(llm.n, 1u);
  EXPECT_EQ(llm.failures, 1u);
  const auto& or1 = *std::find_if(cells.begin(), cells.end(),
                                  [](const AggregateCell& c) { return c.key[0] == "or" && c.key[1] == "p01"; });
  EXPECT_DOUBLE_EQ(or1.mean, 0.7);
  EXPECT_DOUBLE_EQ(or1.mean_fractile, 0.35);
}

TEST(Aggregate, AllFailedCellIsOmittedWithWarning) {
  auto failed = rec("llm", "p01", "L0", 0.0);
  failed.ok = false;
  std::vector<std::string> warnings;
  const auto cells = aggregate({rec("or", "p01", "L0", 0.5), failed}, {Facet::Method}, &warnings);
  EXPECT_EQ(cells.size(), 1u);
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(Report, Table2ShapeIsMethodsByTwelveColumns) {
  std::vector<ResultRecord> rs;
  for (const char* m : {"or", "llm", "or_to_llm", "llm_to_or"}) {
    for (int p = 1; p <= 10; ++p) {
      char pid[8];
      std::snprintf(pid, sizeof pid, "p%02d", p);
      rs.push_back(rec(m, pid, "L0", 0.5 + p / 100.0));
      rs.push_back(rec(m, pid, "LS", 0.1));  // stochastic leads stay out of this table
    }
    rs.push_back(rec(m, "", "L4", 0.9, "real", 0.8));
  }
  const auto t = make_table(rs, table_shape_from_string("table2"));
  ASSERT_EQ(t.rows.size(), 4u);
  ASSERT_EQ(t.columns.size(), 12u);
  EXPECT_EQ(t.columns[10], "All Synthetic");
  EXPECT_EQ(t.columns[11], "Real");
  EXPECT_DOUBLE_EQ(t.cells[0][0]->mean, 0.51);
  EXPECT_NEAR(t.cells[0][10]->mean, 0.555, 1e-12);
  EXPECT_EQ(t.cells[0][10]->n, 10u);
  EXPECT_DOUBLE_EQ(t.cells[0][11]->mean, 0.9);
}

TEST(Report, FormatsAndJsonRoundTrip) {
  std::vector<ResultRecord> rs = {rec("or", "p01", "L0", 0.5), rec("or", "p01", "L0", 0.7),
                                  rec("or", "p02", "L0", 0.4, "synthetic", 0.8)};
  rs[0].implicit_fractile = 0.5;
  rs[1].implicit_fractile = 0.7;
  // The fractile shape reports implicit critical fractiles, not rewards.
  const auto t = make_table(rs, TableShape::Fractile);
  EXPECT_EQ(table_from_json(table_to_json(t)).cells, t.cells);
  const auto csv = render_table(t, ReportFormat::Csv);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "method,column,n,mean,half_width");
  EXPECT_NE(csv.find("or,rho=0.50,2,0.600000,"), std::string::npos);
  EXPECT_NE(render_table(t, ReportFormat::Markdown).find("| or |"), std::string::npos);
  const auto cells = aggregate(rs, {Facet::Method, Facet::Rho});
  EXPECT_EQ(cells_from_json(cells_to_json(cells, {Facet::Method, Facet::Rho})).size(), cells.size());
  EXPECT_THROW(report_format_from_string("xml"), ValidationError);
  EXPECT_THROW(table_shape_from_string("table9"), ValidationError);
}
