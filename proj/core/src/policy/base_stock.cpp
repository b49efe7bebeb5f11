#include "invbench/policy/base_stock.hpp"

#include <algorithm>
#include <cmath>

#include "invbench/common/error.hpp"
#include "invbench/policy/normal.hpp"

namespace invbench::policy {

DemandStats demand_stats(std::span<const double> demands) {
  DemandStats s;
  s.count = demands.size();
  if (demands.empty()) return s;
  double sum = 0.0;
  for (double d : demands) sum += d;
  s.mean = sum / static_cast<double>(demands.size());
  if (demands.size() >= 2) {
    double ss = 0.0;
    for (double d : demands) ss += (d - s.mean) * (d - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(demands.size() - 1));
  }
  return s;
}

void ParamEstimate::validate() const {
  auto check = [](const std::optional<double>& v, const char* name) {
    if (v && !(std::isfinite(*v) && *v >= 0.0)) throw ValidationError(name, "must be a finite non-negative number");
  };
  check(lead_time, "lead_time");
  check(mean, "mean_demand_over_horizon");
  check(stddev, "std_demand_over_horizon");
}

double cap_safety_factor() {
  static const double z = normal_inverse_cdf(0.95);
  return z;
}

ORAdvice capped_base_stock(const DemandStats& stats, double inventory_position, double fractile, int promised_lead,
                           const ParamEstimate& estimate) {
  estimate.validate();
  ORAdvice a;
  a.mean_demand = stats.mean;
  a.std_demand = stats.stddev;
  a.inventory_position = inventory_position;
  a.fractile = fractile;
  a.z = normal_inverse_cdf(fractile);
  a.lead_time = estimate.lead_time.value_or(static_cast<double>(promised_lead));
  const double span = 1.0 + a.lead_time;
  a.horizon_mean = estimate.mean.value_or(span * stats.mean);
  a.horizon_std = estimate.stddev.value_or(std::sqrt(span) * stats.stddev);
  a.base_stock = a.horizon_mean + a.z * a.horizon_std;
  a.cap = a.horizon_mean / span + cap_safety_factor() * a.horizon_std / std::sqrt(span);
  a.quantity = std::max(0.0, std::min(std::max(a.base_stock - inventory_position, 0.0), a.cap));
  return a;
}

namespace {
DemandStats observed_stats(const sim::Observation& obs) { return demand_stats(obs.demand_history); }
}  // namespace

ORAdvice or_recommendation(const sim::Observation& obs) {
  return capped_base_stock(observed_stats(obs), obs.inventory_position(), obs.critical_fractile(), obs.promised_lead);
}

ORAdvice or_recommendation(const sim::Observation& obs, const ParamEstimate& estimate) {
  return capped_base_stock(observed_stats(obs), obs.inventory_position(), obs.critical_fractile(), obs.promised_lead,
                           estimate);
}

}  // namespace invbench::policy
