#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "invbench/stats/complementarity.hpp"

namespace invbench::stats {

enum class Statistic { CE, CEIndividual, KsBound };
std::string to_string(Statistic statistic);

double statistic_value(Statistic statistic, const std::vector<ComplementaritySample>& samples, const AIBenchmark& ai,
                       double delta = 0.0);

struct BootstrapOptions {
  int replicates = 10000;
  std::uint64_t seed = 42;
  double delta = 0.0;        // KS bound only
  double ci_level = 0.95;
  std::size_t parallelism = 1;
};

struct BootstrapResult {
  double point = 0.0;
  double p_value = 1.0;   // share of replicates <= 0 (H0: statistic <= 0)
  double ci_low = 0.0;    // percentile interval
  double ci_high = 0.0;
  int replicates = 0;
  std::vector<std::string> warnings;
};

/// Resamples within each (mode, scenario) cell with replacement. Mode C
/// samples are dropped. The k-th copy of a participant drawn in a cell is
/// labelled "<id>#k", so a person drawn once in several cells stays one
/// person and repeated draws count as separate people. Replicate r uses the
/// stream derive_seed(seed, {r}); results do not depend on parallelism.
BootstrapResult bootstrap(const std::vector<ComplementaritySample>& samples, const AIBenchmark& ai,
                          Statistic statistic, const BootstrapOptions& options = {});

/// Linear-interpolated quantile of an ascending sample (type 7).
double quantile_sorted(const std::vector<double>& sorted, double q);

}  // namespace invbench::stats
