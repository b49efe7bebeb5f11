#pragma once

namespace invbench::policy {

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal quantile (Wichura's AS 241, about 1e-16 relative
/// accuracy). Throws DomainError unless 0 < p < 1.
double normal_inverse_cdf(double p);

}  // namespace invbench::policy
