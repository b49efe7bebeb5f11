#pragma once

#include <span>
#include <vector>

namespace invbench::stats {

struct KsBound {
  double value = 0.0;      // sup_t F_b(t) - F_a(t + delta), clamped at 0
  double threshold = 0.0;  // a maximizing t (meaningless when value == 0)
};

/// Lower bound on P[a - b > delta] from the empirical marginals of a and b.
/// At delta = 0 this is the one-sided Kolmogorov-Smirnov statistic.
/// Throws DomainError for delta < 0 and ValidationError for empty samples.
KsBound ks_lower_bound_detail(std::span<const double> a, std::span<const double> b, double delta);
double ks_lower_bound(std::span<const double> a, std::span<const double> b, double delta);

/// An equal-weight joint sample whose marginals are the empirical a and b
/// (replicated to a common size) and which minimizes the share of pairs with
/// a - b > delta. That minimum equals the bound.
struct Coupling {
  std::vector<double> a;
  std::vector<double> b;
  double violation_fraction = 0.0;
  double bound = 0.0;
  /// 0 when the marginals are reproduced exactly; otherwise a bound on the
  /// sup-norm error in each marginal's CDF, summed over both.
  double approximation_error = 0.0;
};

/// Replicates to lcm(n, m) pairs when that is at most `max_pairs`, otherwise
/// resamples both marginals on a common quantile grid of `max_pairs` points.
Coupling tightness_coupling(std::span<const double> a, std::span<const double> b, double delta,
                            std::size_t max_pairs = 1'000'000);

}  // namespace invbench::stats
