#include <doctest.h>

#include <random>
#include <set>

#include "qap/rng.hpp"

using qap::Rng;

TEST_CASE("raw stream is the standard 64-bit Mersenne Twister") {
  // The standard pins the 10000th output of a default-seeded engine.
  Rng rng(std::mt19937_64::default_seed);
  std::uint64_t x = 0;
  for (int k = 0; k < 10000; ++k) {
    x = rng.next();
  }
  CHECK(x == 9981545732273789042ULL);
}

TEST_CASE("same seed, same stream; different seeds differ") {
  Rng a(42);
  Rng b(42);
  Rng c(43);
  bool differs = false;
  for (int k = 0; k < 100; ++k) {
    const auto va = a.next();
    CHECK(va == b.next());
    differs = differs || va != c.next();
  }
  CHECK(differs);
}

TEST_CASE("below stays in range and covers it") {
  Rng rng(1);
  std::set<std::uint64_t> seen;
  for (int k = 0; k < 2000; ++k) {
    const auto v = rng.below(7);
    CHECK(v < 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
}

TEST_CASE("uniform01 lies in [0, 1) with mean near one half") {
  Rng rng(3);
  double sum = 0.0;
  constexpr int kDraws = 20000;
  for (int k = 0; k < kDraws; ++k) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  CHECK(sum / kDraws == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("bernoulli edges") {
  Rng rng(4);
  for (int k = 0; k < 100; ++k) {
    CHECK_FALSE(rng.bernoulli(0.0));
    CHECK(rng.bernoulli(1.0));
  }
}

TEST_CASE("distinct_pair is ordered and distinct") {
  Rng rng(5);
  for (int k = 0; k < 1000; ++k) {
    const auto [i, j] = rng.distinct_pair(4);
    CHECK(i < j);
    CHECK(j < 4);
  }
}
