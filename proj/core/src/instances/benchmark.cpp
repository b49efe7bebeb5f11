#include "invbench/instances/benchmark.hpp"

#include <cmath>
#include <numeric>

#include "invbench/common/error.hpp"
#include "invbench/common/json_util.hpp"
#include "invbench/instances/patterns.hpp"

namespace invbench::instances {
namespace {

// Stream tag separating lead-time draws from demand draws.
constexpr std::uint64_t kLeadStream = 0x1EAD;

}  // namespace

void LeadTimeConfig::validate() const {
  if (support.empty() || support.size() != probabilities.size())
    throw ValidationError("lead_config." + label, "support and probabilities must be non-empty and equal length");
  double total = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0)) throw ValidationError("lead_config." + label, "negative probability");
    total += p;
  }
  if (std::fabs(total - 1.0) > 1e-12) throw ValidationError("lead_config." + label, "probabilities must sum to 1");
  for (const auto& l : support)
    if (!l.is_lost() && l.periods() < 0) throw ValidationError("lead_config." + label, "negative lead time");
}

std::vector<sim::LeadTime> LeadTimeConfig::draw(int horizon, Rng& rng) const {
  std::vector<sim::LeadTime> out;
  out.reserve(static_cast<std::size_t>(horizon));
  for (int t = 0; t < horizon; ++t) {
    if (is_fixed()) {
      out.push_back(support.front());
      continue;
    }
    const double u = rng.uniform01();
    double acc = 0.0;
    std::size_t pick = support.size() - 1;
    for (std::size_t i = 0; i < support.size(); ++i) {
      acc += probabilities[i];
      if (u < acc) {
        pick = i;
        break;
      }
    }
    out.push_back(support[pick]);
  }
  return out;
}

LeadTimeConfig LeadTimeConfig::fixed(int periods) {
  return {"L" + std::to_string(periods), periods, {sim::LeadTime::fixed(periods)}, {1.0}};
}

LeadTimeConfig LeadTimeConfig::benchmark_stochastic() {
  return {"LS",
          2,
          {sim::LeadTime::fixed(1), sim::LeadTime::fixed(2), sim::LeadTime::fixed(3), sim::LeadTime::lost()},
          {0.25, 0.25, 0.25, 0.25}};
}

LeadTimeConfig LeadTimeConfig::experiment_stochastic() {
  return {"LS75", 1, {sim::LeadTime::fixed(1), sim::LeadTime::lost()}, {0.75, 0.25}};
}

std::vector<CostConfig> benchmark_cost_configs() { return {{1.0, 1.0, "1:1"}, {4.0, 1.0, "4:1"}, {19.0, 1.0, "19:1"}}; }

std::vector<LeadTimeConfig> benchmark_lead_configs() {
  return {LeadTimeConfig::fixed(0), LeadTimeConfig::fixed(4), LeadTimeConfig::benchmark_stochastic()};
}

std::string fractile_label(double rho) { return format_fixed(rho, 2); }

std::vector<sim::Instance> build_benchmark(const BenchmarkOptions& options) {
  if (options.realizations_per_variant <= 0) throw ValidationError("realizations_per_variant", "must be positive");
  const auto costs = benchmark_cost_configs();
  const auto leads = benchmark_lead_configs();

  std::vector<sim::Instance> out;
  out.reserve(40u * static_cast<std::size_t>(options.realizations_per_variant) * costs.size() * leads.size());

  std::vector<std::string> contexts;
  for (int t = 1; t <= options.horizon; ++t)
    contexts.push_back("Period " + std::to_string(t) + " of " + std::to_string(options.horizon) + ".");

  for (const auto& spec : all_pattern_specs()) {
    for (int r = 1; r <= options.realizations_per_variant; ++r) {
      const auto seed = realization_seed(options.base_seed, spec.pattern, spec.variant, r);
      const DemandSeries series = sample_demand_series(spec, options.horizon, seed);

      // Lead times are drawn once per realization and shared by its cost configs.
      std::vector<std::vector<sim::LeadTime>> lead_draws;
      for (std::size_t li = 0; li < leads.size(); ++li) {
        Rng rng(derive_seed(options.base_seed, {kLeadStream, static_cast<std::uint64_t>(spec.pattern),
                                                static_cast<std::uint64_t>(spec.variant),
                                                static_cast<std::uint64_t>(r), li}));
        lead_draws.push_back(leads[li].draw(options.horizon, rng));
      }

      for (const auto& cost : costs) {
        for (std::size_t li = 0; li < leads.size(); ++li) {
          sim::Instance inst;
          inst.id = spec.pattern_id() + "-" + spec.variant_id() + "-r" + std::to_string(r) + "-rho" +
                    fractile_label(cost.critical_fractile()) + "-" + leads[li].label;
          inst.demands = series.test;
          inst.history = series.training;
          inst.lead_times = lead_draws[li];
          inst.promised_lead = leads[li].promised;
          inst.profit = cost.profit;
          inst.holding = cost.holding;
          inst.contexts = contexts;
          inst.product_description = "Single SKU; no product information is available.";
          inst.provenance.family = sim::Family::Synthetic;
          inst.provenance.pattern = spec.pattern_id();
          inst.provenance.variant = spec.variant_id();
          inst.provenance.realization = r;
          inst.provenance.lead_config = leads[li].label;
          inst.provenance.cost_config = cost.label;
          out.push_back(std::move(inst));
        }
      }
    }
  }
  return out;
}

}  // namespace invbench::instances
