#include "invbench/stats/bootstrap.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>

#include "invbench/common/error.hpp"
#include "invbench/common/rng.hpp"
#include "invbench/stats/ks_bound.hpp"

namespace invbench::stats {

std::string to_string(Statistic s) {
  switch (s) {
    case Statistic::CE: return "ce";
    case Statistic::CEIndividual: return "ce_individual";
    case Statistic::KsBound: return "ks_bound";
  }
  return "ce";
}

double statistic_value(Statistic s, const std::vector<ComplementaritySample>& samples, const AIBenchmark& ai,
                       double delta) {
  switch (s) {
    case Statistic::CE: return ce_population(samples, ai);
    case Statistic::CEIndividual: return ce_individual_avg(samples, ai);
    case Statistic::KsBound: {
      const auto pair = ecdf_pair(samples, ai);
      return ks_lower_bound(pair.a, pair.b, delta);
    }
  }
  return 0.0;
}

double quantile_sorted(const std::vector<double>& v, double q) {
  if (v.empty()) throw ValidationError("values", "empty");
  const double h = (static_cast<double>(v.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

BootstrapResult bootstrap(const std::vector<ComplementaritySample>& samples, const AIBenchmark& ai, Statistic statistic,
                          const BootstrapOptions& options) {
  if (options.replicates < 1) throw ValidationError("replicates", "must be positive");
  if (!(options.ci_level > 0.0 && options.ci_level < 1.0)) throw ValidationError("ci_level", "must lie in (0, 1)");
  validate_samples(samples);

  BootstrapResult out;
  out.replicates = options.replicates;
  out.point = statistic_value(statistic, samples, ai, options.delta);

  std::map<std::pair<Mode, std::string>, std::vector<const ComplementaritySample*>> cells;
  for (const auto& s : samples)
    if (s.mode != Mode::C) cells[{s.mode, s.scenario}].push_back(&s);
  for (const auto& [key, members] : cells)
    if (members.size() == 1)
      out.warnings.push_back("cell " + to_string(key.first) + "/" + key.second +
                             " has a single participant; it resamples trivially");

  std::vector<double> stats(static_cast<std::size_t>(options.replicates));
  std::atomic<int> next{0};
  auto worker = [&] {
    std::vector<ComplementaritySample> draw;
    std::map<std::string, int> copies;
    for (int r = next++; r < options.replicates; r = next++) {
      Rng rng(derive_seed(options.seed, {static_cast<std::uint64_t>(r)}));
      draw.clear();
      for (const auto& [key, members] : cells) {
        copies.clear();
        for (std::size_t i = 0; i < members.size(); ++i) {
          const auto* s = members[rng.below(members.size())];
          ComplementaritySample c = *s;
          c.participant += "#" + std::to_string(++copies[s->participant]);
          draw.push_back(std::move(c));
        }
      }
      stats[static_cast<std::size_t>(r)] = statistic_value(statistic, draw, ai, options.delta);
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, options.parallelism);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  const auto nonpositive = std::count_if(stats.begin(), stats.end(), [](double v) { return v <= 0.0; });
  out.p_value = static_cast<double>(nonpositive) / static_cast<double>(stats.size());
  std::sort(stats.begin(), stats.end());
  const double tail = (1.0 - options.ci_level) / 2.0;
  out.ci_low = quantile_sorted(stats, tail);
  out.ci_high = quantile_sorted(stats, 1.0 - tail);
  return out;
}

}  // namespace invbench::stats
