// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "game_driver.hpp"
#include "invbench/common/json_util.hpp"
#include "invbench/common/rng.hpp"
#include "invbench/eval/runner.hpp"
#include "invbench/instances/benchmark.hpp"
#include "invbench/policy/agent.hpp"
#include "invbench/policy/base_stock.hpp"
#include "invbench/policy/chat.hpp"
#include "invbench/policy/normal.hpp"
#include "invbench/sim/metrics.hpp"
#include "invbench/sim/simulator.hpp"
#include "invbench/stats/analysis.hpp"
#include "invbench/stats/bootstrap.hpp"
#include "invbench/stats/ks_bound.hpp"
#include "invbench/stats/ols.hpp"
#include "support/mini_episodes.hpp"
#include "support/oracles.hpp"
#include "support/paths.hpp"
#include "support/prompt_fixture.hpp"

using namespace invbench;

namespace tol {
constexpr double kSimSeconds = 1.0;
constexpr double kStdDev = 1e-6;
constexpr double kOrderQty = 1e-3;
constexpr double kRandomOrder = 1e-6;
constexpr double kInverseCdf = 1e-9;
constexpr double kInverseCdfSeconds = 5.0;
constexpr double kAllSyntheticTarget = 0.677, kAllSyntheticBand = 0.04;
constexpr double kCellTarget = 0.778, kCellBand = 0.08;
constexpr double kFractileTargets[3] = {0.470, 0.527, 0.597};
constexpr double kFractileBand = 0.05;
constexpr double kRegenSeconds = 120.0;
constexpr double kBoundSlack = 0.02;
constexpr double kBoundSeconds = 30.0;
constexpr double kKsGrid = 1e-12;
constexpr double kRejectLow = 0.03, kRejectHigh = 0.08;
constexpr double kBootstrapSeconds = 120.0;
constexpr double kOlsExact = 1e-10;
constexpr double kFixture = 1e-8;
constexpr double kPoint = 1e-12;
}  // namespace tol

namespace {

struct Line {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- simulator ---------------------------------------------------------------

Line simulator_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  int mismatches = 0, periods = 0;
  for (const auto& e : testing::mini_episodes()) {
    const auto in = testing::mini_instance(e);
    auto st = sim::new_session(in);
    for (std::size_t t = 0; t < e.actions.size(); ++t) {
      const auto o = sim::step(st, in, e.actions[t]);
      const auto& row = e.rows[t];
      mismatches += !(o.arrivals == row.arrivals && o.sales == row.sales && o.ending_inventory == row.ending &&
                      o.reward == row.reward);
      ++periods;
    }
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && testing::mini_episodes().size() == 25 && secs < tol::kSimSeconds,
          std::to_string(testing::mini_episodes().size()) + " episodes, " + std::to_string(periods) + " periods, " +
              std::to_string(mismatches) + " mismatches, " + fmt("%.3f s", secs)};
}

// --- base stock ----------------------------------------------------------------

sim::Observation observation(std::vector<double> d, double ip, int lead, double p, double h) {
  sim::Observation o;
  o.demand_history = std::move(d);
  o.on_hand = ip;
  o.promised_lead = lead;
  o.profit = p;
  o.holding = h;
  o.period = 1;
  o.horizon = 10;
  return o;
}

Line base_stock_oracle() {
  const auto a = policy::or_recommendation(observation({80, 90, 100, 110, 120}, 0, 0, 19, 1));
  const double oracle = testing::brute_base_stock_order({80, 90, 100, 110, 120}, 0, 0.95, 0);
  bool ok = a.mean_demand == 100.0 && std::fabs(a.std_demand - 15.811388) < tol::kStdDev &&
            std::fabs(a.quantity - oracle) < tol::kOrderQty;
  Rng rng(2024);
  const double rhos[] = {0.5, 0.8, 0.95};
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    std::vector<double> d(5 + rng.below(20));
    for (auto& x : d) x = std::round(rng.uniform(0.0, 300.0));
    const int lead = static_cast<int>(rng.below(5));
    const double rho = rhos[rng.below(3)];
    const double ip = std::round(rng.uniform(0.0, 400.0));
    const auto r = policy::or_recommendation(observation(d, ip, lead, rho / (1 - rho), 1.0));
    worst = std::max(worst, std::fabs(r.quantity - testing::brute_base_stock_order(d, ip, rho, lead)));
  }
  ok = ok && worst < tol::kRandomOrder;
  return {ok, "q=" + fmt("%.6f", a.quantity) + " oracle=" + fmt("%.6f", oracle) + ", 20 random cases max err " +
                  fmt("%.2e", worst)};
}

// --- inverse normal --------------------------------------------------------------

Line inverse_cdf_accuracy() {
  const auto t0 = std::chrono::steady_clock::now();
  constexpr int kPoints = 10000;
  double worst = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    const double u = 0.001 + (i + 0.5) * (0.998 / kPoints);
    worst = std::max(worst, std::fabs(testing::quad_normal_cdf(policy::normal_inverse_cdf(u)) - u));
  }
  const double secs = seconds_since(t0);
  return {worst < tol::kInverseCdf && secs < tol::kInverseCdfSeconds,
          "max |Phi(Phi^-1(u)) - u| = " + fmt("%.2e", worst) + " over 10^4 points, " + fmt("%.2f s", secs)};
}

// --- benchmark regeneration --------------------------------------------------------

const std::vector<sim::Instance>& benchmark() {
  static const auto all = instances::build_benchmark();
  return all;
}

double mean_of(const std::vector<double>& v) { return v.empty() ? NAN : std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

Line or_regeneration() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& all = benchmark();
  const policy::Agent or_agent(policy::AgentConfig{policy::Method::OR, nullptr, 0.0, 1, "or"});
  const auto summary = eval::run_benchmark(all, {or_agent});
  std::vector<double> det, cell;
  std::map<double, std::vector<double>> fractiles;
  for (const auto& r : summary.records) {
    if (r.lead == "L0" || r.lead == "L4") det.push_back(r.normalized_reward);
    if (r.pattern == "p01" && r.lead == "L0" && std::fabs(r.rho - 0.5) < 1e-9) cell.push_back(r.normalized_reward);
    fractiles[std::round(r.rho * 100) / 100].push_back(r.implicit_fractile);
  }
  const double secs = seconds_since(t0);
  const double all_syn = mean_of(det), cell_mean = mean_of(cell);
  const double f[3] = {mean_of(fractiles[0.5]), mean_of(fractiles[0.8]), mean_of(fractiles[0.95])};
  bool ok = all.size() == 720 && det.size() == 480 && cell.size() == 8 && summary.failures == 0;
  ok = ok && std::fabs(all_syn - tol::kAllSyntheticTarget) <= tol::kAllSyntheticBand;
  ok = ok && std::fabs(cell_mean - tol::kCellTarget) <= tol::kCellBand;
  for (int i = 0; i < 3; ++i) ok = ok && std::fabs(f[i] - tol::kFractileTargets[i]) <= tol::kFractileBand;
  ok = ok && f[0] < f[1] && f[1] < f[2] && secs < tol::kRegenSeconds;
  std::ostringstream d;
  d << "All Synthetic " << fmt("%.3f", all_syn) << " (target 0.677+-0.04), p01/L0/0.50 " << fmt("%.3f", cell_mean)
    << " over " << cell.size() << " (0.778+-0.08), fractiles " << fmt("%.3f", f[0]) << "/" << fmt("%.3f", f[1]) << "/"
    << fmt("%.3f", f[2]) << " (0.470/0.527/0.597+-0.05), " << fmt("%.1f s", secs);
  return {ok, d.str()};
}

// --- mock equivalence and prompt snapshots ------------------------------------------

Line mock_equivalence() {
  const auto& all = benchmark();
  std::shared_ptr<policy::ChatBackend> follow(policy::MockChatBackend::from_spec("follow-or"));
  std::shared_ptr<policy::ChatBackend> params(policy::MockChatBackend::from_spec("default-params"));
  const std::vector<policy::Agent> agents = {
      policy::Agent(policy::AgentConfig{policy::Method::OR, nullptr, 0.0, 1, "or"}),
      policy::Agent(policy::AgentConfig{policy::Method::OR_TO_LLM, follow, 0.0, 1, "follow"}),
      policy::Agent(policy::AgentConfig{policy::Method::LLM_TO_OR, params, 0.0, 1, "params"})};
  eval::RunOptions ro;
  ro.parallelism = 4;
  const auto s = eval::run_benchmark(all, agents, ro);
  int follow_diff = 0, params_diff = 0;
  for (std::size_t i = 0; i + 2 < s.records.size(); i += 3) {
    const auto& o = s.records[i];
    follow_diff += s.records[i + 1].total_reward != o.total_reward || s.records[i + 1].implicit_fractile != o.implicit_fractile;
    params_diff += s.records[i + 2].total_reward != o.total_reward || s.records[i + 2].implicit_fractile != o.implicit_fractile;
  }
  int golden_bad = 0, golden_n = 0;
  std::string missing;
  for (const auto& [name, text] : testing::prompt_snapshots()) {
    ++golden_n;
    const auto path = testing::golden_dir() / "prompts" / (name + ".txt");
    if (!std::filesystem::exists(path) || read_text_file(path) != text) {
      ++golden_bad;
      missing += " " + name;
    }
  }
  const bool ok = s.records.size() == 3 * all.size() && s.failures == 0 && follow_diff == 0 && params_diff == 0 &&
                  golden_bad == 0;
  return {ok, "follow-OR vs OR: " + std::to_string(follow_diff) + " of " + std::to_string(all.size()) +
                  " differ; default-params LLM->OR vs OR: " + std::to_string(params_diff) + " differ; " +
                  std::to_string(golden_n - golden_bad) + "/" + std::to_string(golden_n) + " prompt snapshots match" +
                  (missing.empty() ? "" : " (bad:" + missing + ")")};
}

// --- KS bound validity --------------------------------------------------------------

double draw_marginal(Rng& rng, int family, double loc, double scale) {
  switch (family) {
    case 0: return rng.normal(loc, scale);
    case 1: return rng.uniform(loc - scale, loc + scale);
    default: return rng.uniform01() < 0.3 ? rng.normal(loc - scale, 0.5 * scale) : rng.normal(loc + 0.5 * scale, scale);
  }
}

// One random joint law of (a, b): b from a mixture, a a noisy monotone or
// antitone function of b plus an independent mixture component.
struct JointLaw {
  int fb, fa;
  double lb, sb, la, sa, slope, mix;
  std::pair<double, double> draw(Rng& rng) const {
    const double b = draw_marginal(rng, fb, lb, sb);
    const double indep = draw_marginal(rng, fa, la, sa);
    const double a = rng.uniform01() < mix ? la + slope * (b - lb) : indep;
    return {a, b};
  }
};

Line bound_validity_monte_carlo() {
  const auto t0 = std::chrono::steady_clock::now();
  constexpr int kLaws = 50, kN = 5000, kReference = 200000;
  const double deltas[] = {0.0, 0.05, 0.1};
  Rng law_rng(31337);
  double worst_margin = 1.0, worst_ref = 1.0, worst_coupling = 0.0;
  int violations = 0;
  for (int k = 0; k < kLaws; ++k) {
    const JointLaw law{static_cast<int>(law_rng.below(3)), static_cast<int>(law_rng.below(3)),
                       law_rng.uniform(-0.2, 0.2), law_rng.uniform(0.05, 0.4), law_rng.uniform(-0.2, 0.3),
                       law_rng.uniform(0.05, 0.4), law_rng.uniform(-1.5, 1.5), law_rng.uniform(0.0, 1.0)};
    Rng rng(derive_seed(99, {static_cast<std::uint64_t>(k)}));
    std::vector<double> a(kN), b(kN);
    for (int i = 0; i < kN; ++i) std::tie(a[i], b[i]) = law.draw(rng);
    std::vector<double> ra(kReference), rb(kReference);
    for (int i = 0; i < kReference; ++i) std::tie(ra[i], rb[i]) = law.draw(rng);
    for (double delta : deltas) {
      const double bound = stats::ks_lower_bound(a, b, delta);
      double in_sample = 0.0, reference = 0.0;
      for (int i = 0; i < kN; ++i) in_sample += a[i] - b[i] > delta;
      for (int i = 0; i < kReference; ++i) reference += ra[i] - rb[i] > delta;
      in_sample /= kN;
      reference /= kReference;
      worst_margin = std::min(worst_margin, in_sample - bound);
      worst_ref = std::min(worst_ref, reference - bound);
      violations += in_sample < bound - tol::kBoundSlack || reference < bound - tol::kBoundSlack;
      const auto c = stats::tightness_coupling(a, b, delta);
      worst_coupling = std::max(worst_coupling, std::fabs(c.violation_fraction - bound));
    }
  }
  const double secs = seconds_since(t0);
  const bool ok = violations == 0 && worst_coupling <= 2.0 / kN && secs < tol::kBoundSeconds;
  return {ok, "50 laws x 3 deltas: min(P_hat - bound) in-sample " + fmt("%.4f", worst_margin) + ", vs 2e5 reference " +
                  fmt("%.4f", worst_ref) + " (slack -0.02); coupling gap max " + fmt("%.2e", worst_coupling) +
                  " (2/n = 4e-4); " + fmt("%.1f s", secs)};
}

// --- KS bound vs grid ------------------------------------------------------------------

Line ks_grid_oracle() {
  Rng rng(4242);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.below(50), m = 1 + rng.below(50);
    std::vector<double> a(n), b(m);
    // Multiples of 1/256 in [-1, 1]: every jump lies on the dyadic grid below.
    for (auto& x : a) x = static_cast<double>(rng.below(513)) / 256.0 - 1.0;
    for (auto& x : b) x = static_cast<double>(rng.below(513)) / 256.0 - 1.0;
    const double delta = static_cast<double>(rng.below(33)) / 256.0;
    const double grid = testing::grid_ks_bound(a, b, delta, -3.0, 1.0 / 16384.0, 98305);
    worst = std::max(worst, std::fabs(stats::ks_lower_bound(a, b, delta) - grid));
  }
  return {worst <= tol::kKsGrid, "100 samples (n, m <= 50), 98305-point grid on [-3, 3]: max diff " + fmt("%.1e", worst)};
}

// --- bootstrap --------------------------------------------------------------------------


// Three scenarios; each participant plays one in H, one in H_AI and one in C.
// Under the null the H and H_AI means agree and the AI benchmark sits well
// below both, so CE = 0 at the boundary of H0: CE <= 0.
std::vector<stats::ComplementaritySample> null_experiment(Rng& rng, int participants) {
  const stats::Mode order[3] = {stats::Mode::H, stats::Mode::H_AI, stats::Mode::C};
  const double mu[3] = {0.55, 0.62, 0.48};
  std::vector<stats::ComplementaritySample> out;
  for (int p = 0; p < participants; ++p) {
    const double skill = rng.normal(0.0, 0.04);
    for (int z = 0; z < 3; ++z)
      out.push_back({"u" + std::to_string(p), "z" + std::to_string(z), order[(p + z) % 3],
                     mu[z] + skill + rng.normal(0.0, 0.08)});
  }
  return out;
}

Line bootstrap_calibration() {
  const auto t0 = std::chrono::steady_clock::now();
  const stats::AIBenchmark ai{{{"z0", 0.25}, {"z1", 0.32}, {"z2", 0.18}}};
  Rng rng(2718);
  const auto probe = null_experiment(rng, 30);
  stats::BootstrapOptions o;
  o.replicates = 2000;
  o.seed = 7;
  const auto r1 = stats::bootstrap(probe, ai, stats::Statistic::CE, o);
  const auto r2 = stats::bootstrap(probe, ai, stats::Statistic::CE, o);
  o.parallelism = 4;
  const auto r3 = stats::bootstrap(probe, ai, stats::Statistic::CE, o);
  const bool bitwise = r1.p_value == r2.p_value && r1.p_value == r3.p_value && r1.ci_low == r3.ci_low &&
                       r1.ci_high == r3.ci_high;

  constexpr int kSims = 200;
  int rejections = 0;
  stats::BootstrapOptions so;
  so.replicates = 1000;
  so.parallelism = 4;
  for (int k = 0; k < kSims; ++k) {
    Rng sim_rng(derive_seed(555, {static_cast<std::uint64_t>(k)}));
    so.seed = derive_seed(556, {static_cast<std::uint64_t>(k)});
    rejections += stats::bootstrap(null_experiment(sim_rng, 30), ai, stats::Statistic::CE, so).p_value < 0.05;
  }
  const double rate = static_cast<double>(rejections) / kSims;
  const double secs = seconds_since(t0);
  const bool ok = bitwise && rate >= tol::kRejectLow && rate <= tol::kRejectHigh && secs < tol::kBootstrapSeconds;
  return {ok, std::string("seeded p-value bitwise stable across runs and threads: ") + (bitwise ? "yes" : "no") +
                  "; null rejection rate at 0.05: " + std::to_string(rejections) + "/200 = " + fmt("%.3f", rate) +
                  " (band 0.03-0.08); " + fmt("%.1f s", secs)};
}

// --- OLS -----------------------------------------------------------------------------------

Line ols_oracles() {
  // Noiseless recovery.
  Rng rng(8);
  stats::OlsInput in;
  in.names = {"(Intercept)", "x1", "x2", "x3"};
  const double beta[4] = {0.25, -1.5, 2.0, 0.125};
  for (int i = 0; i < 90; ++i) {
    const std::vector<double> row = {1.0, rng.normal(0, 1), rng.uniform(-3, 3), static_cast<double>(i % 5)};
    in.y.push_back(std::inner_product(row.begin(), row.end(), beta, 0.0));
    in.x.push_back(row);
    in.clusters.push_back("g" + std::to_string(i % 9));
  }
  const auto fit = stats::ols_cluster_robust(in);
  double noiseless = 0.0;
  for (int j = 0; j < 4; ++j) noiseless = std::max(noiseless, std::fabs(fit.coefficients[j].estimate - beta[j]));

  // Three clusters, one regressor: the sandwich by explicit 2x2 algebra.
  const std::vector<double> x = {0, 1, 2, 3, 4, 5, 6, 7}, y = {1.0, 2.5, 2.0, 4.5, 4.0, 6.5, 5.5, 8.0};
  const std::vector<std::string> g = {"a", "a", "b", "b", "b", "c", "c", "c"};
  stats::OlsInput toy;
  toy.names = {"(Intercept)", "x"};
  toy.y = y;
  toy.clusters = g;
  for (double v : x) toy.x.push_back({1.0, v});
  const auto tf = stats::ols_cluster_robust(toy);
  double sx = 0, sxx = 0, sy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sx += x[i], sxx += x[i] * x[i], sy += y[i], sxy += x[i] * y[i];
  const double n = 8, det = n * sxx - sx * sx, b1 = (n * sxy - sx * sy) / det, b0 = (sy - b1 * sx) / n;
  const double i00 = sxx / det, i01 = -sx / det, i11 = n / det;
  double m00 = 0, m01 = 0, m11 = 0;
  for (const char* c : {"a", "b", "c"}) {
    double s0 = 0, s1 = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (g[i] == c) {
        const double u = y[i] - b0 - b1 * x[i];
        s0 += u, s1 += x[i] * u;
      }
    m00 += s0 * s0, m01 += s0 * s1, m11 += s1 * s1;
  }
  const double scale = 3.0 / 2.0 * 7.0 / 6.0;
  const double v00 = scale * (i00 * (i00 * m00 + i01 * m01) + i01 * (i00 * m01 + i01 * m11));
  const double v11 = scale * (i01 * (i01 * m00 + i11 * m01) + i11 * (i01 * m01 + i11 * m11));
  const double sandwich = std::max(std::fabs(tf.at("(Intercept)").se - std::sqrt(v00)), std::fabs(tf.at("x").se - std::sqrt(v11)));

  // Mixed clustering (subjects and automated runs) on the bundled fixture.
  const auto dir = testing::data_dir() / "analysis_fixture";
  const auto samples = stats::load_samples(dir / "experiment.jsonl");
  const auto runs = stats::load_automated_runs(dir / "automated_runs.json");
  const auto expected = read_json_file(dir / "expected.json");
  stats::AnalysisOptions ao;
  ao.replicates = 50;
  const auto doc = stats::analyze(samples, runs, ao);
  double fixture = 0.0;
  auto compare = [&](const Json& got, const Json& want) {
    for (const char* k : {"estimate", "se", "p_two_sided"})
      fixture = std::max(fixture, std::fabs(got.at(k).get<double>() - want.at(k).get<double>()));
  };
  auto coef = [](const Json& reg, const std::string& name) -> const Json& {
    for (const auto& c : reg.at("coefficients"))
      if (c.at("name") == name) return c;
    throw std::runtime_error("missing " + name);
  };
  compare(coef(doc.at("mode_effects"), "mode[B]"), expected.at("mode_effects").at("mode[B]"));
  compare(coef(doc.at("mode_effects"), "mode[C]"), expected.at("mode_effects").at("mode[C]"));
  compare(doc.at("mode_effects").at("contrast_c_minus_b"), expected.at("mode_effects").at("contrast_c_minus_b"));
  compare(coef(doc.at("mode_b_vs_ai"), "treated"), expected.at("mode_b_vs_ai").at("treated"));
  compare(coef(doc.at("mode_a_vs_or"), "treated"), expected.at("mode_a_vs_or").at("treated"));
  const bool clusters = doc.at("mode_b_vs_ai").at("clusters") == expected.at("mode_b_vs_ai").at("clusters");

  const bool ok = noiseless < tol::kOlsExact && sandwich < tol::kOlsExact && fixture < tol::kFixture && clusters;
  return {ok, "noiseless max err " + fmt("%.1e", noiseless) + ", 3-cluster sandwich SE err " + fmt("%.1e", sandwich) +
                  ", fixture regressions max err " + fmt("%.1e", fixture) + " (mixed clusters " +
                  doc.at("mode_b_vs_ai").at("clusters").dump() + ")"};
}

// --- analysis end to end -----------------------------------------------------------------

Line analysis_end_to_end() {
  const auto dir = testing::data_dir() / "analysis_fixture";
  const auto samples = stats::load_samples(dir / "experiment.jsonl");
  const auto runs = stats::load_automated_runs(dir / "automated_runs.json");
  const auto expected = read_json_file(dir / "expected.json");
  stats::AnalysisOptions ao;
  ao.replicates = 2000;
  ao.deltas = {0.0, 0.05};
  const auto doc = stats::analyze(samples, runs, ao);
  int missing = 0;
  for (const char* key : {"counts", "cells", "ai_benchmark", "ce", "ce_individual", "ks_bound", "mode_effects",
                          "mode_b_vs_ai", "mode_a_vs_or"})
    missing += !doc.contains(key) || doc.at(key).is_null();
  for (const char* key : {"estimate", "p_value", "ci_low", "ci_high"}) {
    missing += !doc.at("ce").contains(key);
    missing += !doc.at("ks_bound")[0].contains(key);
  }
  double err = std::fabs(doc.at("ce").at("estimate").get<double>() - expected.at("ce").get<double>());
  err = std::max(err, std::fabs(doc.at("ce_individual").at("estimate").get<double>() -
                                expected.at("ce_individual").get<double>()));
  for (std::size_t i = 0; i < 2; ++i)
    err = std::max(err, std::fabs(doc.at("ks_bound")[i].at("estimate").get<double>() -
                                  expected.at("ks_bound")[i].at("estimate").get<double>()));
  const bool ok = missing == 0 && err < tol::kPoint && doc.at("counts") == expected.at("counts");
  std::ostringstream d;
  d << "CE " << fmt("%.4f", doc.at("ce").at("estimate").get<double>()) << " [" << fmt("%.4f", doc.at("ce").at("ci_low").get<double>())
    << ", " << fmt("%.4f", doc.at("ce").at("ci_high").get<double>()) << "], KS bound "
    << fmt("%.4f", doc.at("ks_bound")[0].at("estimate").get<double>()) << ", tau_B "
    << fmt("%.4f", doc.at("mode_effects").at("coefficients")[0].at("estimate").get<double>())
    << "; point estimates vs fixture max err " << fmt("%.1e", err) << ", " << missing << " missing fields";
  return {ok, d.str()};
}

Line game_contract() {
  const auto r = acceptance::run_game_contract();
  return {r.pass, r.detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Line()>>> checks = {
      {"simulator-oracle", simulator_oracle},
      {"base-stock-oracle", base_stock_oracle},
      {"inverse-normal-accuracy", inverse_cdf_accuracy},
      {"or-benchmark-regeneration", or_regeneration},
      {"mock-equivalence-and-prompt-snapshots", mock_equivalence},
      {"ks-bound-validity-monte-carlo", bound_validity_monte_carlo},
      {"ks-bound-grid-oracle", ks_grid_oracle},
      {"bootstrap-determinism-calibration", bootstrap_calibration},
      {"ols-oracles", ols_oracles},
      {"analysis-end-to-end", analysis_end_to_end},
      {"game-service-contract", game_contract},
  };
  int failed = 0;
  for (const auto& [name, fn] : checks) {
    Line line;
    try {
      line = fn();
    } catch (const std::exception& e) {
      line = {false, std::string("threw: ") + e.what()};
    }
    failed += !line.pass;
    std::printf("%s %-40s %s\n", line.pass ? "PASS" : "FAIL", name.c_str(), line.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu passed\n", static_cast<int>(checks.size()) - failed, checks.size());
  return failed == 0 ? 0 : 1;
}
