#include "invbench/game/experiment.hpp"

#include "invbench/common/error.hpp"
#include "invbench/common/json_util.hpp"
#include "invbench/common/rng.hpp"
#include "invbench/instances/benchmark.hpp"
#include "invbench/instances/patterns.hpp"

namespace invbench::game {
namespace {

std::string cost_label(double p, double h) {
  auto n = [](double x) { return x == static_cast<long long>(x) ? format_fixed(x, 0) : format_fixed(x, 2); };
  return n(p) + ":" + n(h);
}

}  // namespace

std::string to_string(GameMode mode) {
  switch (mode) {
    case GameMode::A: return "A";
    case GameMode::B: return "B";
    case GameMode::C: return "C";
  }
  return "A";
}

GameMode game_mode_from_string(const std::string& text) {
  if (text == "A" || text == "a") return GameMode::A;
  if (text == "B" || text == "b") return GameMode::B;
  if (text == "C" || text == "c") return GameMode::C;
  throw ValidationError("mode", "expected A, B or C, got '" + text + "'");
}

std::string sample_mode(GameMode mode) {
  switch (mode) {
    case GameMode::A: return "H";
    case GameMode::B: return "H_AI";
    case GameMode::C: return "C";
  }
  return "H";
}

const std::array<std::array<GameMode, 3>, 6>& mode_permutations() {
  using M = GameMode;
  static const std::array<std::array<GameMode, 3>, 6> perms{{{M::A, M::B, M::C},
                                                             {M::A, M::C, M::B},
                                                             {M::B, M::A, M::C},
                                                             {M::B, M::C, M::A},
                                                             {M::C, M::A, M::B},
                                                             {M::C, M::B, M::A}}};
  return perms;
}

std::vector<sim::Instance> default_experiment_instances(const ExperimentOptions& o) {
  if (o.horizon < 1) throw ValidationError("horizon", "must be positive");
  struct Setup {
    const char* pattern;
    const char* variant;
    instances::LeadTimeConfig lead;
    const char* description;
  };
  const std::vector<Setup> setups = {
      {"p02", "v1", instances::LeadTimeConfig::fixed(0),
       "Insulated stainless steel water bottle, 750 ml. Sold year round; demand may step up without warning."},
      {"p04", "v1", instances::LeadTimeConfig::fixed(1),
       "Wireless earbuds with charging case. A newer product whose sales have been growing."},
      {"p01", "v1", instances::LeadTimeConfig::experiment_stochastic(),
       "Plain cotton crew-neck T-shirt, white. A staple with steady demand; the supplier is unreliable."},
  };

  std::vector<sim::Instance> out;
  for (std::size_t i = 0; i < setups.size(); ++i) {
    const auto& s = setups[i];
    const auto spec = instances::pattern_spec(s.pattern, s.variant);
    const auto series = instances::sample_demand_series(spec, o.horizon, derive_seed(o.seed, {0xE7, i}));
    Rng lead_rng(derive_seed(o.seed, {0xE7, i, 0x1EAD}));
    sim::Instance in;
    in.id = "exp-" + std::to_string(i + 1);
    in.demands = series.test;
    in.history = series.training;
    in.lead_times = s.lead.draw(o.horizon, lead_rng);
    in.promised_lead = s.lead.promised;
    in.profit = o.profit;
    in.holding = o.holding;
    for (int t = 1; t <= o.horizon; ++t)
      in.contexts.push_back("Week " + std::to_string(t) + " of " + std::to_string(o.horizon) + ".");
    in.product_description = s.description;
    in.provenance.family = sim::Family::Custom;
    in.provenance.pattern = spec.pattern_id();
    in.provenance.variant = spec.variant_id();
    in.provenance.lead_config = s.lead.label;
    in.provenance.cost_config = cost_label(o.profit, o.holding);
    in.validate();
    out.push_back(std::move(in));
  }
  return out;
}

}  // namespace invbench::game
