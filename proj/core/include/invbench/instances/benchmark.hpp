#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "invbench/common/rng.hpp"
#include "invbench/sim/instance.hpp"

namespace invbench::instances {

inline constexpr std::uint64_t kBaseSeed = 42;
inline constexpr int kSyntheticHorizon = 50;

struct LeadTimeConfig {
  std::string label;             // "L0", "L4", "LS", ...
  int promised = 0;              // L shown to the decision maker
  std::vector<sim::LeadTime> support;
  std::vector<double> probabilities;  // same length as support; sums to 1

  bool is_fixed() const { return support.size() == 1; }
  /// Throws ValidationError if probabilities are malformed.
  void validate() const;
  /// One realized lead time per period.
  std::vector<sim::LeadTime> draw(int horizon, Rng& rng) const;

  static LeadTimeConfig fixed(int periods);
  /// Uniform over {1, 2, 3, lost}; promised lead time 2.
  static LeadTimeConfig benchmark_stochastic();
  /// 1 with probability 0.75, lost otherwise; promised lead time 1.
  static LeadTimeConfig experiment_stochastic();
};

struct CostConfig {
  double profit = 1.0;
  double holding = 1.0;
  std::string label;  // "1:1"
  double critical_fractile() const { return profit / (profit + holding); }
};

/// p:h = 1:1, 4:1, 19:1 (rho = 0.50, 0.80, 0.95).
std::vector<CostConfig> benchmark_cost_configs();
/// L = 0, L = 4, stochastic.
std::vector<LeadTimeConfig> benchmark_lead_configs();

struct BenchmarkOptions {
  int realizations_per_variant = 2;
  std::uint64_t base_seed = kBaseSeed;
  int horizon = kSyntheticHorizon;
};

/// Full cross of 40 variants x realizations x 3 cost configs x 3 lead-time
/// configs (720 instances by default). Deterministic in the options.
std::vector<sim::Instance> build_benchmark(const BenchmarkOptions& options = {});

/// "0.50" style label for a critical fractile.
std::string fractile_label(double rho);

}  // namespace invbench::instances
