#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>

namespace qap {

/// Seeded random source shared by all solvers.
///
/// The engine is std::mt19937_64, whose output sequence for a given seed is
/// fixed by the C++ standard. The standard distributions are not, so bounded
/// integers and reals are derived here from raw engine output: integers by
/// rejection sampling (unbiased), reals from the top 53 bits. A seed therefore
/// produces the same stream on every conforming toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::size_t below(std::size_t bound);

  /// Uniform real in [0, 1).
  double uniform01();

  /// True with probability p.
  bool bernoulli(double p) { return uniform01() < p; }

  /// Unordered pair {i, j}, i < j, uniform over the n(n-1)/2 pairs. n must be >= 2.
  std::pair<std::size_t, std::size_t> distinct_pair(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace qap
