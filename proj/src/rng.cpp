#include "qap/rng.hpp"

#include "qap/error.hpp"

namespace qap {

std::size_t Rng::below(std::size_t bound) {
  if (bound == 0) {
    throw UsageError("Rng::below needs a positive bound");
  }
  const std::uint64_t b = bound;
  // 2^64 mod b; values below it would bias the low residues.
  const std::uint64_t threshold = (0 - b) % b;
  for (;;) {
    const std::uint64_t x = engine_();
    if (x >= threshold) {
      return static_cast<std::size_t>(x % b);
    }
  }
}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::pair<std::size_t, std::size_t> Rng::distinct_pair(std::size_t n) {
  if (n < 2) {
    throw UsageError("distinct_pair needs n >= 2");
  }
  std::size_t i = below(n);
  std::size_t j = below(n - 1);
  if (j >= i) {
    ++j;
  }
  return i < j ? std::pair{i, j} : std::pair{j, i};
}

}  // namespace qap
