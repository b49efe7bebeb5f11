#include "invbench/stats/ks_bound.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "invbench/common/error.hpp"

namespace invbench::stats {
namespace {

void check(std::span<const double> a, std::span<const double> b, double delta) {
  if (!(delta >= 0.0)) throw DomainError("ks_lower_bound: delta must be non-negative");
  if (a.empty() || b.empty()) throw ValidationError("samples", "both samples must be non-empty");
}

double count_le(const std::vector<double>& sorted, double x) {
  return static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
}

}  // namespace

KsBound ks_lower_bound_detail(std::span<const double> a_in, std::span<const double> b_in, double delta) {
  check(a_in, b_in, delta);
  std::vector<double> a(a_in.begin(), a_in.end()), b(b_in.begin(), b_in.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double n = static_cast<double>(a.size()), m = static_cast<double>(b.size());
  KsBound best;
  auto consider = [&](double t, double fa) {
    const double gap = count_le(b, t) / m - fa / n;
    if (gap > best.value) best = {gap, t};
  };
  // F_b jumps up at each b_j; F_a(t + delta) jumps at t = a_i - delta.
  for (double t : b) consider(t, count_le(a, t + delta));
  for (double x : a) consider(x - delta, count_le(a, x));
  return best;
}

double ks_lower_bound(std::span<const double> a, std::span<const double> b, double delta) {
  return ks_lower_bound_detail(a, b, delta).value;
}

Coupling tightness_coupling(std::span<const double> a_in, std::span<const double> b_in, double delta,
                            std::size_t max_pairs) {
  check(a_in, b_in, delta);
  std::vector<double> a(a_in.begin(), a_in.end()), b(b_in.begin(), b_in.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());

  Coupling out;
  const std::size_t n = a.size(), m = b.size();
  const std::size_t l = std::lcm(n, m);
  std::vector<double> xa, xb;
  if (l <= max_pairs) {
    for (double v : a) xa.insert(xa.end(), l / n, v);
    for (double v : b) xb.insert(xb.end(), l / m, v);
  } else {
    // Point k takes the sorted sample at index floor(k * n / K); each CDF is
    // then off by less than 1/K at every point.
    const std::size_t k_pts = max_pairs;
    for (std::size_t k = 0; k < k_pts; ++k) {
      xa.push_back(a[k * n / k_pts]);
      xb.push_back(b[k * m / k_pts]);
    }
    out.approximation_error = 2.0 / static_cast<double>(k_pts);
  }
  out.bound = ks_lower_bound(xa, xb, delta);

  // Maximum matching of pairs with a - b <= delta: the admissible b's of a
  // larger a are a subset of those of a smaller a, so matching the largest
  // remaining a with the largest remaining b is optimal.
  const std::size_t k = xa.size();
  std::vector<char> a_used(k, 0), b_used(k, 0);
  std::size_t j = k;  // xb is ascending; walk down
  for (std::size_t i = k; i-- > 0;) {
    if (j > 0 && xa[i] - xb[j - 1] <= delta) {
      out.a.push_back(xa[i]);
      out.b.push_back(xb[j - 1]);
      a_used[i] = b_used[j - 1] = 1;
      --j;
    }
  }
  std::vector<double> rest_a, rest_b;
  for (std::size_t i = 0; i < k; ++i) {
    if (!a_used[i]) rest_a.push_back(xa[i]);
    if (!b_used[i]) rest_b.push_back(xb[i]);
  }
  for (std::size_t i = 0; i < rest_a.size(); ++i) {
    out.a.push_back(rest_a[i]);
    out.b.push_back(rest_b[i]);
  }
  std::size_t violations = 0;
  for (std::size_t i = 0; i < k; ++i) violations += out.a[i] - out.b[i] > delta ? 1 : 0;
  out.violation_fraction = static_cast<double>(violations) / static_cast<double>(k);
  return out;
}

}  // namespace invbench::stats
