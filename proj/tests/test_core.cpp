#include <doctest.h>

#include <map>
#include <random>

#include "oracles.hpp"
#include "qap/core.hpp"
#include "qap/error.hpp"
#include "qap/qaplib_io.hpp"
#include "qap/rng.hpp"

using namespace qap;

namespace {

QapInstance two_by_two() {
  return QapInstance("tiny", SquareMatrix(2, {0, 3, 2, 0}), SquareMatrix(2, {0, 5, 4, 0}));
}

}  // namespace

TEST_CASE("evaluate on hand-expanded cases") {
  const QapInstance one("one", SquareMatrix(1, {0}), SquareMatrix(1, {0}));
  CHECK(evaluate(one, Assignment({0})) == 0);

  const QapInstance inst = two_by_two();
  CHECK(evaluate(inst, Assignment({0, 1})) == 23);
  CHECK(evaluate(inst, Assignment({1, 0})) == 22);
  CHECK(swap_delta(inst, Assignment({0, 1}), {0, 1}) == -1);
  CHECK(swap_delta(inst, Assignment({0, 1}), {1, 1}) == 0);
}

TEST_CASE("evaluate matches the expanded x-matrix sum") {
  std::mt19937 gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + gen() % 6;
    const QapInstance inst = oracle::random_instance(n, gen);
    const auto perm = oracle::random_perm(n, gen);
    CHECK(evaluate(inst, Assignment(perm)) == oracle::expanded_cost(inst, perm));
  }
}

TEST_CASE("swap_delta equals the full re-evaluation difference") {
  std::mt19937 gen(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + gen() % 7;
    const QapInstance inst = oracle::random_instance(n, gen);
    const Assignment a(oracle::random_perm(n, gen));
    const SwapMove m{gen() % n, gen() % n};
    CHECK(swap_delta(inst, a, m) == evaluate(inst, apply_swap(a, m)) - evaluate(inst, a));
  }
}

TEST_CASE("relabeling facilities leaves the cost unchanged") {
  std::mt19937 gen(13);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + gen() % 6;
    const QapInstance inst = oracle::random_instance(n, gen);
    const auto perm = oracle::random_perm(n, gen);
    const auto relabel = oracle::random_perm(n, gen);  // facility i -> relabel[i]
    SquareMatrix f(n);
    std::vector<std::size_t> moved(n);
    for (std::size_t i = 0; i < n; ++i) {
      moved[relabel[i]] = perm[i];
      for (std::size_t k = 0; k < n; ++k) {
        f(relabel[i], relabel[k]) = inst.flow()(i, k);
      }
    }
    const QapInstance renamed("renamed", f, inst.distance());
    CHECK(evaluate(renamed, Assignment(moved)) == evaluate(inst, Assignment(perm)));
  }
}

TEST_CASE("apply_swap") {
  CHECK(apply_swap(Assignment({0, 1, 2}), {0, 2}) == Assignment({2, 1, 0}));
  CHECK(apply_swap(Assignment({2, 0, 1}), {1, 1}) == Assignment({2, 0, 1}));
  std::mt19937 gen(14);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + gen() % 9;
    const Assignment a(oracle::random_perm(n, gen));
    const SwapMove m{gen() % n, gen() % n};
    CHECK(apply_swap(apply_swap(a, m), m) == a);
  }
  CHECK_THROWS_AS(apply_swap(Assignment({0, 1}), {0, 2}), UsageError);
}

TEST_CASE("size and index checks") {
  const QapInstance inst = two_by_two();
  CHECK_THROWS_AS(evaluate(inst, Assignment({0, 1, 2})), UsageError);
  CHECK_THROWS_AS(swap_delta(inst, Assignment({0, 1}), {0, 5}), UsageError);
  CHECK_THROWS_AS(Assignment({0, 0}), ValidationError);
  CHECK_THROWS_AS(Assignment({1, 2}), ValidationError);
  CHECK_THROWS_AS(Assignment(std::vector<std::size_t>{}), ValidationError);
  CHECK_THROWS_AS(QapInstance("x", SquareMatrix(2), SquareMatrix(3)), ValidationError);
  CHECK_THROWS_AS(QapInstance("x", SquareMatrix(0), SquareMatrix(0)), ValidationError);
  CHECK_THROWS_AS(QapInstance("x", SquareMatrix(1, {-1}), SquareMatrix(1, {0})), ValidationError);
  CHECK_THROWS_AS(QapInstance("x", SquareMatrix(2, {0, INT64_MAX / 8, 0, 0}),
                              SquareMatrix(2, {0, 100, 0, 0})),
                  ValidationError);
}

TEST_CASE("inverse") {
  const Assignment a({2, 0, 3, 1});
  CHECK(a.inverse() == Assignment({1, 3, 0, 2}));
  CHECK(a.inverse().inverse() == a);
}

TEST_CASE("random_assignment") {
  Rng single(5);
  CHECK(random_assignment(1, single) == Assignment({0}));

  Rng r1(77);
  Rng r2(77);
  CHECK(random_assignment(20, r1) == random_assignment(20, r2));

  Rng rng(2024);
  std::map<std::vector<std::size_t>, int> counts;
  constexpr int kDraws = 6000;
  for (int k = 0; k < kDraws; ++k) {
    const Assignment a = random_assignment(3, rng);
    counts[{a.perm().begin(), a.perm().end()}]++;
  }
  CHECK(counts.size() == 6);
  for (const auto& [perm, count] : counts) {
    CHECK(std::abs(static_cast<double>(count) / kDraws - 1.0 / 6.0) < 0.05);
  }
  CHECK_THROWS_AS(random_assignment(0, rng), UsageError);
}

TEST_CASE("bundled instances stay within the cost range") {
  for (const BestKnownEntry& e : best_known_registry()) {
    const auto path = instance_path(default_data_dir(), e.name);
    if (!std::filesystem::exists(path)) {
      continue;
    }
    const QapInstance inst = load_instance(path);
    CHECK(inst.size() == e.size);
    const long double bound = 4.0L * inst.size() * inst.size() * inst.flow().max_entry() *
                              inst.distance().max_entry();
    CHECK(bound < static_cast<long double>(INT64_MAX));
  }
}
