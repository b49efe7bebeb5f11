#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace invbench::instances {

enum class Distribution { Normal, Uniform, AR1 };

/// How the five history values are produced for a pattern family.
enum class TrainingRule {
  IidWholeSeries,   // stationary: i.i.d. draws from the single distribution
  IidFirstSegment,  // changepoint families: i.i.d. draws from segment one only
  Sequential,       // trend/seasonal/AR(1): the process evaluated at t = 1..5
};

/// One regime of a demand process, active on periods [first, last].
struct Segment {
  int first = 1;
  int last = 1 << 30;
  Distribution kind = Distribution::Normal;
  std::function<double(int)> mean;  // Normal: mu(t)
  std::function<double(int)> sd;    // Normal: sigma(t)
  double lo = 0.0, hi = 0.0;        // Uniform[lo, hi]
  double phi = 0.0, c = 0.0, sigma = 0.0, d0 = 100.0;  // AR(1)
};

struct PatternSpec {
  int pattern = 1;  // 1..10
  int variant = 1;  // 1..4
  std::string name;
  TrainingRule training = TrainingRule::IidWholeSeries;
  std::vector<Segment> segments;

  std::string pattern_id() const;  // "p01"
  std::string variant_id() const;  // "v1"
  const Segment& segment_at(int t) const;
  /// Expected demand of the untruncated process at period t.
  double expected_mean(int t) const;
};

/// Throws ValidationError for anything outside p01..p10 / v1..v4.
PatternSpec pattern_spec(int pattern, int variant);
PatternSpec pattern_spec(std::string_view pattern_id, std::string_view variant_id);

/// All 40 (pattern, variant) pairs, in pattern-major order.
std::vector<PatternSpec> all_pattern_specs();

struct DemandSeries {
  std::vector<std::int64_t> test;      // d_1..d_T
  std::vector<std::int64_t> training;  // d_{-4}..d_0
};

/// Draws one realization. Values are drawn, clamped at zero, and rounded to
/// the nearest integer (ties away from zero). Training and test draws use
/// independent streams derived from `seed`.
DemandSeries sample_demand_series(const PatternSpec& spec, int horizon, std::uint64_t seed);

/// Seed of realization r (1-based) of (pattern, variant) under `base_seed`.
std::uint64_t realization_seed(std::uint64_t base_seed, int pattern, int variant, int realization);

}  // namespace invbench::instances
