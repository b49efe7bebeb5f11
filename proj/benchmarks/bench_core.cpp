#include <benchmark/benchmark.h>

#include <vector>

#include "invbench/common/rng.hpp"
#include "invbench/instances/benchmark.hpp"
#include "invbench/policy/agent.hpp"
#include "invbench/policy/normal.hpp"
#include "invbench/eval/runner.hpp"
#include "invbench/stats/bootstrap.hpp"
#include "invbench/stats/ks_bound.hpp"

using namespace invbench;

namespace {

const std::vector<sim::Instance>& synthetic() {
  static const auto all = instances::build_benchmark();
  return all;
}

std::vector<double> normal_sample(std::size_t n, std::uint64_t seed, double mean) {
  Rng rng(seed);
  std::vector<double> out(n);
  for (auto& x : out) x = rng.normal(mean, 1.0);
  return out;
}

}  // namespace

static void BM_NormalQuantile(benchmark::State& state) {
  double u = 0.0005;
  for (auto _ : state) {
    benchmark::DoNotOptimize(policy::normal_inverse_cdf(u));
    u += 0.000997;
    if (u >= 1.0) u -= 0.999;
  }
}
BENCHMARK(BM_NormalQuantile);

// One 50-period OR episode, simulator plus policy plus normalization.
static void BM_OrEpisode(benchmark::State& state) {
  const auto& inst = synthetic()[static_cast<std::size_t>(state.range(0))];
  const policy::Agent agent(policy::AgentConfig{policy::Method::OR, nullptr, 0.0, 1, "or"});
  for (auto _ : state) benchmark::DoNotOptimize(eval::run_episode(inst, agent).record.normalized_reward);
  state.SetItemsProcessed(state.iterations() * inst.horizon());
}
BENCHMARK(BM_OrEpisode)->Arg(0)->Arg(300)->Arg(700);

static void BM_KsLowerBound(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = normal_sample(n, 1, 0.2);
  const auto b = normal_sample(n, 2, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(stats::ks_lower_bound(a, b, 0.05));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KsLowerBound)->RangeMultiplier(4)->Range(64, 65536)->Complexity(benchmark::oNLogN);

static void BM_TightnessCoupling(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = normal_sample(n, 3, 0.2);
  const auto b = normal_sample(n, 4, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(stats::tightness_coupling(a, b, 0.0).bound);
}
BENCHMARK(BM_TightnessCoupling)->Arg(1000)->Arg(5000);

// Bootstrap of CE on a 60-participant, 3-scenario experiment.
static void BM_BootstrapCe(benchmark::State& state) {
  std::vector<stats::ComplementaritySample> samples;
  Rng rng(7);
  const stats::Mode modes[] = {stats::Mode::H, stats::Mode::H_AI, stats::Mode::C};
  for (int p = 0; p < 60; ++p)
    for (int s = 0; s < 3; ++s)
      samples.push_back({"p" + std::to_string(p), "s" + std::to_string(s), modes[(p + s) % 3], rng.uniform(0.3, 0.9)});
  stats::AIBenchmark ai;
  ai.value = {{"s0", 0.6}, {"s1", 0.6}, {"s2", 0.6}};
  stats::BootstrapOptions opts;
  opts.replicates = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(stats::bootstrap(samples, ai, stats::Statistic::CE, opts).p_value);
}
BENCHMARK(BM_BootstrapCe)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
