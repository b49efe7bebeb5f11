#include "invbench/stats/analysis.hpp"

#include <set>

#include "invbench/common/error.hpp"
#include "invbench/stats/bootstrap.hpp"
#include "invbench/stats/ks_bound.hpp"
#include "invbench/stats/ols.hpp"

namespace invbench::stats {
namespace {

Json coefficient_json(const Coefficient& c) {
  return {{"name", c.name},       {"estimate", c.estimate},       {"se", c.se},
          {"t", c.t},             {"p_two_sided", c.p_two_sided}, {"p_greater", c.p_greater}};
}

Json regression_json(const OlsResult& r, const std::vector<std::string>& report) {
  Json coefs = Json::array();
  for (const auto& name : report) coefs.push_back(coefficient_json(r.at(name)));
  return {{"n", r.n}, {"clusters", r.clusters}, {"df", r.df}, {"coefficients", coefs}};
}

Json bootstrap_json(const BootstrapResult& b) {
  return {{"estimate", b.point},   {"p_value", b.p_value},       {"ci_low", b.ci_low},
          {"ci_high", b.ci_high},  {"replicates", b.replicates}, {"warnings", b.warnings}};
}

// Human rows of one mode plus automated runs, clustered by subject and by run index.
Json indicator_regression(const std::vector<ComplementaritySample>& samples, Mode mode,
                          const std::map<std::string, std::vector<double>>& runs, const std::string& baseline,
                          std::vector<std::string>& notes, const std::string& label) {
  std::vector<IndicatorRow> rows;
  for (const auto& s : samples)
    if (s.mode == mode) rows.push_back({s.reward, s.scenario, true, "subject:" + s.participant});
  for (const auto& [z, v] : runs)
    for (std::size_t r = 0; r < v.size(); ++r) rows.push_back({v[r], z, false, "run:" + std::to_string(r)});
  try {
    return regression_json(fit_indicator_model(rows, baseline), {"treated"});
  } catch (const std::exception& e) {
    notes.push_back(label + " regression skipped: " + e.what());
    return nullptr;
  }
}

}  // namespace

AutomatedRuns automated_runs_from_json(const Json& doc) {
  AutomatedRuns runs;
  try {
    if (doc.contains("ai")) runs.ai = doc.at("ai").get<std::map<std::string, std::vector<double>>>();
    if (doc.contains("or")) runs.orp = doc.at("or").get<std::map<std::string, std::vector<double>>>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("automated runs: ") + e.what());
  }
  if (runs.ai.empty()) throw SchemaError("automated runs: the \"ai\" map is required");
  return runs;
}

AutomatedRuns load_automated_runs(const std::filesystem::path& path) {
  return automated_runs_from_json(read_json_file(path));
}

std::vector<ComplementaritySample> samples_from_jsonl(const std::vector<Json>& lines) {
  std::vector<ComplementaritySample> out;
  for (const auto& j : lines) {
    if (j.contains("record") && j.at("record") != "sample") continue;
    out.push_back(sample_from_json(j));
  }
  return out;
}

std::vector<ComplementaritySample> load_samples(const std::filesystem::path& path) {
  return samples_from_jsonl(read_jsonl(path));
}

Json analyze(const std::vector<ComplementaritySample>& samples, const AutomatedRuns& runs,
             const AnalysisOptions& options) {
  validate_samples(samples);
  const AIBenchmark ai = AIBenchmark::from_runs(runs.ai);
  std::vector<std::string> notes;

  std::set<std::string> scenarios;
  std::set<std::string> participants;
  std::map<std::pair<std::string, std::string>, std::pair<double, int>> cell_sum;
  for (const auto& s : samples) {
    scenarios.insert(s.scenario);
    participants.insert(s.participant);
    auto& c = cell_sum[{to_string(s.mode), s.scenario}];
    c.first += s.reward;
    ++c.second;
  }
  if (scenarios.empty()) throw ValidationError("samples", "the experiment log has no samples");
  const std::string baseline = options.baseline_instance.empty() ? *scenarios.begin() : options.baseline_instance;

  Json cells = Json::array();
  for (const auto& [key, c] : cell_sum)
    cells.push_back({{"mode", key.first}, {"scenario", key.second}, {"n", c.second}, {"mean", c.first / c.second}});

  BootstrapOptions bo;
  bo.replicates = options.replicates;
  bo.seed = options.seed;
  bo.ci_level = options.ci_level;
  bo.parallelism = options.parallelism;

  Json doc;
  doc["counts"] = {{"samples", samples.size()}, {"participants", participants.size()}, {"scenarios", scenarios.size()}};
  doc["cells"] = cells;
  doc["ai_benchmark"] = ai.value;
  doc["ce"] = bootstrap_json(bootstrap(samples, ai, Statistic::CE, bo));
  doc["ce_individual"] = bootstrap_json(bootstrap(samples, ai, Statistic::CEIndividual, bo));
  const auto pair = ecdf_pair(samples, ai);
  doc["ecdf"] = {{"a", pair.a.size()}, {"b", pair.b.size()}};

  Json ks = Json::array();
  for (double delta : options.deltas) {
    bo.delta = delta;
    auto b = bootstrap(samples, ai, Statistic::KsBound, bo);
    Json entry = bootstrap_json(b);
    entry["delta"] = delta;
    entry["threshold"] = ks_lower_bound_detail(pair.a, pair.b, delta).threshold;
    ks.push_back(entry);
  }
  doc["ks_bound"] = ks;

  std::vector<PanelRow> panel;
  for (const auto& s : samples)
    panel.push_back({s.reward, s.participant, s.scenario, s.mode == Mode::H ? "A" : s.mode == Mode::H_AI ? "B" : "C"});
  try {
    const auto fe = fit_mode_effects(panel, baseline, "A");
    std::vector<std::string> report;
    for (const char* m : {"mode[B]", "mode[C]"})
      if (std::any_of(fe.coefficients.begin(), fe.coefficients.end(), [&](const auto& c) { return c.name == m; }))
        report.push_back(m);
    Json reg = regression_json(fe, report);
    if (report.size() == 2)
      reg["contrast_c_minus_b"] = coefficient_json(fe.contrast({{"mode[C]", 1.0}, {"mode[B]", -1.0}}, "mode[C]-mode[B]"));
    reg["baseline"] = {{"mode", "A"}, {"instance", baseline}};
    doc["mode_effects"] = reg;
  } catch (const std::exception& e) {
    notes.push_back(std::string("mode regression skipped: ") + e.what());
    doc["mode_effects"] = nullptr;
  }

  doc["mode_b_vs_ai"] = indicator_regression(samples, Mode::H_AI, runs.ai, baseline, notes, "Mode B vs AI");
  doc["mode_a_vs_or"] = runs.orp.empty() ? Json(nullptr)
                                         : indicator_regression(samples, Mode::H, runs.orp, baseline, notes, "Mode A vs OR");
  doc["options"] = {{"replicates", options.replicates}, {"seed", options.seed}, {"ci_level", options.ci_level},
                    {"deltas", options.deltas}};
  doc["notes"] = notes;
  return doc;
}

}  // namespace invbench::stats
