#include "invbench/instances/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "invbench/common/error.hpp"
#include "invbench/common/rng.hpp"

namespace invbench::instances {
namespace {

constexpr int kShift = 16;  // first period of the second regime

std::function<double(int)> constant(double v) {
  return [v](int) { return v; };
}

Segment normal(int first, int last, double mu, double sigma) {
  Segment s;
  s.first = first;
  s.last = last;
  s.kind = Distribution::Normal;
  s.mean = constant(mu);
  s.sd = constant(sigma);
  return s;
}

Segment normal_fn(std::function<double(int)> mu, std::function<double(int)> sigma) {
  Segment s;
  s.kind = Distribution::Normal;
  s.mean = std::move(mu);
  s.sd = std::move(sigma);
  return s;
}

Segment uniform(int first, int last, double lo, double hi) {
  Segment s;
  s.first = first;
  s.last = last;
  s.kind = Distribution::Uniform;
  s.lo = lo;
  s.hi = hi;
  return s;
}

Segment ar1(double phi, double c, double sigma) {
  Segment s;
  s.kind = Distribution::AR1;
  s.phi = phi;
  s.c = c;
  s.sigma = sigma;
  s.d0 = 100.0;
  return s;
}

constexpr int kOpen = 1 << 30;

// Two-regime changepoint at period 16.
std::vector<Segment> shift(Segment before, Segment after) {
  before.first = 1;
  before.last = kShift - 1;
  after.first = kShift;
  after.last = kOpen;
  return {std::move(before), std::move(after)};
}

std::vector<Segment> three_regimes(int second, int third, Segment a, Segment b, Segment c) {
  a.first = 1;
  a.last = second - 1;
  b.first = second;
  b.last = third - 1;
  c.first = third;
  c.last = kOpen;
  return {std::move(a), std::move(b), std::move(c)};
}

double sine(int t, double period) { return std::sin(2.0 * std::numbers::pi * t / period); }

std::int64_t truncate_and_round(double x) { return static_cast<std::int64_t>(std::round(std::max(x, 0.0))); }

double draw(const Segment& s, int t, Rng& rng) {
  switch (s.kind) {
    case Distribution::Normal: return rng.normal(s.mean(t), s.sd(t));
    case Distribution::Uniform: return rng.uniform(s.lo, s.hi);
    case Distribution::AR1: break;
  }
  throw std::logic_error("AR(1) segments are drawn as a path");
}

// Draws the latent AR(1) path D_1..D_n from D_0; the recursion runs on the
// untruncated values.
std::vector<std::int64_t> ar1_path(const Segment& s, int n, Rng& rng) {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(n));
  double d = s.d0;
  for (int t = 1; t <= n; ++t) {
    d = s.phi * d + s.c + rng.normal(0.0, s.sigma);
    out.push_back(truncate_and_round(d));
  }
  return out;
}

std::vector<std::int64_t> draw_periods(const PatternSpec& spec, int first, int count, Rng& rng) {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int t = first; t < first + count; ++t) out.push_back(truncate_and_round(draw(spec.segment_at(t), t, rng)));
  return out;
}

}  // namespace

std::string PatternSpec::pattern_id() const {
  return pattern < 10 ? "p0" + std::to_string(pattern) : "p" + std::to_string(pattern);
}

std::string PatternSpec::variant_id() const { return "v" + std::to_string(variant); }

const Segment& PatternSpec::segment_at(int t) const {
  for (const auto& s : segments)
    if (t >= s.first && t <= s.last) return s;
  return segments.back();
}

double PatternSpec::expected_mean(int t) const {
  const Segment& s = segment_at(t);
  switch (s.kind) {
    case Distribution::Normal: return s.mean(t);
    case Distribution::Uniform: return 0.5 * (s.lo + s.hi);
    case Distribution::AR1: {
      // E[D_t] = mu + phi^t (D_0 - mu), mu = c / (1 - phi)
      const double mu = s.c / (1.0 - s.phi);
      return mu + std::pow(s.phi, t) * (s.d0 - mu);
    }
  }
  return 0.0;
}

PatternSpec pattern_spec(int pattern, int variant) {
  if (pattern < 1 || pattern > 10) throw ValidationError("pattern", "unknown pattern " + std::to_string(pattern));
  if (variant < 1 || variant > 4) throw ValidationError("variant", "unknown variant " + std::to_string(variant));

  PatternSpec spec;
  spec.pattern = pattern;
  spec.variant = variant;
  const int v = variant - 1;
  const auto sqrt_t = [](double k) { return [k](int t) { return k * std::sqrt(static_cast<double>(t)); }; };

  switch (pattern) {
    case 1: {
      spec.name = "Stationary IID";
      spec.training = TrainingRule::IidWholeSeries;
      const double sigmas[] = {25.0, 40.0, 15.0};
      if (v < 3) {
        spec.segments = {normal(1, kOpen, 100.0, sigmas[v])};
      } else {
        spec.segments = {uniform(1, kOpen, 50.0, 150.0)};
      }
      break;
    }
    case 2: {
      spec.name = "Mean Increase";
      spec.training = TrainingRule::IidFirstSegment;
      const double mu[] = {200.0, 150.0, 300.0, 200.0};
      const double sd[] = {35.0, 30.0, 50.0, 25.0};
      spec.segments = shift(normal(0, 0, 100.0, 25.0), normal(0, 0, mu[v], sd[v]));
      break;
    }
    case 3: {
      spec.name = "Mean Decrease";
      spec.training = TrainingRule::IidFirstSegment;
      const double mu0[] = {100.0, 100.0, 100.0, 150.0};
      const double sd0[] = {25.0, 25.0, 25.0, 30.0};
      const double mu1[] = {50.0, 70.0, 30.0, 80.0};
      const double sd1[] = {18.0, 20.0, 15.0, 22.0};
      spec.segments = shift(normal(0, 0, mu0[v], sd0[v]), normal(0, 0, mu1[v], sd1[v]));
      break;
    }
    case 4: {
      spec.name = "Increasing Trend";
      spec.training = TrainingRule::Sequential;
      switch (v) {
        case 0: spec.segments = {normal_fn([](int t) { return 100.0 * t; }, sqrt_t(25.0))}; break;
        case 1: spec.segments = {normal_fn([](int t) { return 50.0 + 3.0 * t; }, constant(20.0))}; break;
        case 2: spec.segments = {normal_fn([](int t) { return 100.0 * std::pow(1.05, t); }, constant(25.0))}; break;
        default: spec.segments = {normal_fn([](int t) { return 100.0 + 2.0 * t; }, sqrt_t(25.0))}; break;
      }
      break;
    }
    case 5: {
      spec.name = "Decreasing Trend";
      spec.training = TrainingRule::Sequential;
      switch (v) {
        case 0: spec.segments = {normal_fn([](int t) { return std::max(200.0 - 3.0 * t, 50.0); }, constant(25.0))}; break;
        case 1: spec.segments = {normal_fn([](int t) { return 200.0 * std::pow(0.97, t); }, constant(20.0))}; break;
        case 2: spec.segments = {normal_fn([](int t) { return std::max(150.0 - 2.0 * t, 30.0); }, constant(20.0))}; break;
        default:
          spec.segments = {normal_fn([](int t) { return 200.0 / std::sqrt(static_cast<double>(t)); }, constant(15.0))};
          break;
      }
      break;
    }
    case 6: {
      spec.name = "Variance Change";
      spec.training = TrainingRule::IidFirstSegment;
      switch (v) {
        case 0: spec.segments = shift(normal(0, 0, 100.0, 25.0), uniform(0, 0, 0.0, 200.0)); break;
        case 1: spec.segments = shift(normal(0, 0, 100.0, 25.0), normal(0, 0, 100.0, 50.0)); break;
        case 2: spec.segments = shift(normal(0, 0, 100.0, 50.0), normal(0, 0, 100.0, 20.0)); break;
        default: spec.segments = shift(uniform(0, 0, 50.0, 150.0), normal(0, 0, 100.0, 15.0)); break;
      }
      break;
    }
    case 7: {
      spec.name = "Seasonal";
      spec.training = TrainingRule::Sequential;
      switch (v) {
        case 0: spec.segments = {normal_fn([](int t) { return 100.0 + 30.0 * sine(t, 10.0); }, constant(25.0))}; break;
        case 1: spec.segments = {normal_fn([](int t) { return 100.0 + 50.0 * sine(t, 5.0); }, constant(25.0))}; break;
        case 2: spec.segments = {normal_fn([](int t) { return 100.0 + 40.0 * sine(t, 25.0); }, constant(25.0))}; break;
        default:
          spec.segments = {normal_fn([](int t) { return 100.0 * (1.0 + 0.3 * sine(t, 10.0)); }, constant(25.0))};
          break;
      }
      break;
    }
    case 8: {
      spec.name = "Multi Changepoint";
      spec.training = TrainingRule::IidFirstSegment;
      const double m[4][3] = {{100, 150, 80}, {100, 60, 140}, {100, 100, 100}, {80, 120, 100}};
      const double s[4][3] = {{25, 30, 20}, {25, 20, 30}, {25, 50, 20}, {20, 25, 22}};
      spec.segments = three_regimes(16, 36, normal(0, 0, m[v][0], s[v][0]), normal(0, 0, m[v][1], s[v][1]),
                                    normal(0, 0, m[v][2], s[v][2]));
      break;
    }
    case 9: {
      spec.name = "Temporary Spike/Dip";
      spec.training = TrainingRule::IidFirstSegment;
      const double m[4][3] = {{100, 200, 100}, {100, 50, 100}, {100, 250, 120}, {100, 40, 80}};
      const double s[4][3] = {{25, 35, 25}, {25, 18, 25}, {25, 40, 28}, {25, 15, 22}};
      spec.segments = three_regimes(16, 26, normal(0, 0, m[v][0], s[v][0]), normal(0, 0, m[v][1], s[v][1]),
                                    normal(0, 0, m[v][2], s[v][2]));
      break;
    }
    case 10: {
      spec.name = "Autocorrelated AR(1)";
      spec.training = TrainingRule::Sequential;
      const double phi[] = {0.7, 0.5, 0.3, -0.3};
      const double c[] = {30.0, 50.0, 70.0, 130.0};
      const double sigma[] = {20.0, 25.0, 30.0, 25.0};
      spec.segments = {ar1(phi[v], c[v], sigma[v])};
      break;
    }
  }
  for (auto& seg : spec.segments)
    if (seg.first == 0) seg.first = 1;
  return spec;
}

PatternSpec pattern_spec(std::string_view pattern_id, std::string_view variant_id) {
  auto parse = [](std::string_view text, char prefix, const char* field) {
    if (text.size() < 2 || text.front() != prefix) throw ValidationError(field, "unrecognized id '" + std::string(text) + "'");
    int value = 0;
    for (char ch : text.substr(1)) {
      if (ch < '0' || ch > '9') throw ValidationError(field, "unrecognized id '" + std::string(text) + "'");
      value = value * 10 + (ch - '0');
    }
    return value;
  };
  return pattern_spec(parse(pattern_id, 'p', "pattern"), parse(variant_id, 'v', "variant"));
}

std::vector<PatternSpec> all_pattern_specs() {
  std::vector<PatternSpec> specs;
  specs.reserve(40);
  for (int p = 1; p <= 10; ++p)
    for (int v = 1; v <= 4; ++v) specs.push_back(pattern_spec(p, v));
  return specs;
}

std::uint64_t realization_seed(std::uint64_t base_seed, int pattern, int variant, int realization) {
  return derive_seed(base_seed, {static_cast<std::uint64_t>(pattern), static_cast<std::uint64_t>(variant),
                                 static_cast<std::uint64_t>(realization)});
}

DemandSeries sample_demand_series(const PatternSpec& spec, int horizon, std::uint64_t seed) {
  if (horizon <= 0) throw ValidationError("horizon", "must be positive");
  Rng train_rng(derive_seed(seed, {0}));
  Rng test_rng(derive_seed(seed, {1}));
  constexpr int kTrain = 5;

  DemandSeries out;
  const Segment& first = spec.segments.front();
  if (first.kind == Distribution::AR1) {
    out.training = ar1_path(first, kTrain, train_rng);
    out.test = ar1_path(first, horizon, test_rng);
    return out;
  }

  switch (spec.training) {
    case TrainingRule::IidWholeSeries:
    case TrainingRule::IidFirstSegment:
      // Period 1 always lies in the first segment.
      for (int i = 0; i < kTrain; ++i) out.training.push_back(truncate_and_round(draw(first, 1, train_rng)));
      break;
    case TrainingRule::Sequential:
      out.training = draw_periods(spec, 1, kTrain, train_rng);
      break;
  }
  out.test = draw_periods(spec, 1, horizon, test_rng);
  return out;
}

}  // namespace invbench::instances
