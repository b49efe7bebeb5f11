#pragma once

#include <optional>
#include <span>

#include "invbench/sim/simulator.hpp"

namespace invbench::policy {

struct DemandStats {
  double mean = 0.0;
  double stddev = 0.0;  // n - 1 divisor; 0 when n < 2
  std::size_t count = 0;
};

DemandStats demand_stats(std::span<const double> demands);

/// Parameters an LLM may supply in place of the data-driven defaults.
/// With only `lead_time`, the horizon mean/std are the defaults scaled by
/// the estimated lead time. With `mean` and `stddev`, those are used as-is.
struct ParamEstimate {
  std::optional<double> lead_time;
  std::optional<double> mean;    // demand over the lead-time horizon
  std::optional<double> stddev;

  /// Throws ValidationError for negative or non-finite values.
  void validate() const;
  friend bool operator==(const ParamEstimate&, const ParamEstimate&) = default;
};

struct ORAdvice {
  double base_stock = 0.0;          // B
  double inventory_position = 0.0;  // IP
  double mean_demand = 0.0;         // d-bar
  double std_demand = 0.0;          // s_d
  double horizon_mean = 0.0;        // mu-hat
  double horizon_std = 0.0;         // sigma-hat
  double lead_time = 0.0;           // lead time behind the horizon estimates
  double cap = 0.0;
  double quantity = 0.0;
  double z = 0.0;
  double fractile = 0.5;

  friend bool operator==(const ORAdvice&, const ORAdvice&) = default;
};

/// The 0.95 quantile used by the order cap regardless of the fractile.
double cap_safety_factor();

/// Capped base-stock order from demand statistics and inventory position.
ORAdvice capped_base_stock(const DemandStats& stats, double inventory_position, double fractile,
                           int promised_lead, const ParamEstimate& estimate = {});

/// Uses every demand in the observation's history and the promised lead time.
ORAdvice or_recommendation(const sim::Observation& observation);
ORAdvice or_recommendation(const sim::Observation& observation, const ParamEstimate& estimate);

}  // namespace invbench::policy
