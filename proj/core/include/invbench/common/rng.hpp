#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace invbench {

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Folds a path of indices into a base seed:
///   s_0 = base, s_{k+1} = splitmix64(s_k ^ splitmix64(index_k + 1)).
/// Used for per-(pattern, variant, realization) and per-replicate streams.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path) noexcept;

/// Portable random stream. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; all conversions to doubles, bounded
/// integers and normals are implemented here (not via <random>
/// distributions, which are implementation-defined) so that streams are
/// bit-identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1) with 53 bits of resolution.
  double uniform01();

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);

  /// Uniform integer in [0, n); n must be positive. Rejection sampling, unbiased.
  std::uint64_t below(std::uint64_t n);

  /// Normal(mean, sd) by the Box-Muller transform (one output per call).
  double normal(double mean, double sd);

 private:
  std::mt19937_64 engine_;
};

}  // namespace invbench
