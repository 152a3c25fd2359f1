#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qap/config_io.hpp"
#include "qap/error.hpp"
#include "qap/qaplib_io.hpp"
#include "qap/rng.hpp"
#include "qap/run.hpp"

using namespace qap;

namespace {

QapInstance had12() { return load_instance(default_data_dir() / "had12.dat"); }

StopCondition iterations(std::uint64_t n) {
  StopCondition s;
  s.max_iterations = n;
  return s;
}

void check_trace(const RunResult& r, const QapInstance& inst) {
  REQUIRE_FALSE(r.trace().empty());
  CHECK(r.trace().front().iteration == 0);
  for (std::size_t k = 1; k < r.trace().size(); ++k) {
    CHECK(r.trace()[k].best_cost <= r.trace()[k - 1].best_cost);
    CHECK(r.trace()[k].iteration >= r.trace()[k - 1].iteration);
  }
  CHECK(r.trace().back().best_cost == r.best_cost());
  CHECK(r.trace().back().iteration == r.iterations_executed());
  CHECK(evaluate(inst, r.best()) == r.best_cost());
}

}  // namespace

TEST_CASE("solver ids") {
  CHECK(parse_solver_id("ga") == SolverId::kGa);
  CHECK(parse_solver_id("Ts") == SolverId::kTs);
  CHECK(parse_solver_id("SA") == SolverId::kSa);
  CHECK(to_string(SolverId::kTs) == "TS");
  CHECK_THROWS_AS(parse_solver_id("aco"), ConfigError);
}

TEST_CASE("stop condition needs a budget") {
  CHECK_THROWS_AS(StopCondition{}.validate(), ConfigError);
  StopCondition target_only;
  target_only.target_quality = 10;
  CHECK_THROWS_AS(target_only.validate(), ConfigError);
  for (SolverId id : kAllSolvers) {
    CHECK_NOTHROW(default_stop(id).validate());
  }
}

TEST_CASE("config must belong to the solver") {
  const QapInstance inst = had12();
  CHECK_THROWS_AS(run(SolverId::kGa, inst, TsConfig{}, iterations(5), 1), ConfigError);
  GaConfig bad;
  bad.population_size = 1;
  CHECK_THROWS_AS(run(SolverId::kGa, inst, bad, iterations(5), 1), ConfigError);
  CHECK(solver_of(default_config(SolverId::kSa)) == SolverId::kSa);
}

TEST_CASE("zero iterations returns the seeded start") {
  const QapInstance inst = had12();
  // GA: best of the seeded initial population, drawn in order from the run's stream.
  Rng rng(1);
  Cost best = INT64_MAX;
  for (std::size_t k = 0; k < GaConfig{}.population_size; ++k) {
    best = std::min(best, evaluate(inst, random_assignment(inst.size(), rng)));
  }
  const RunResult ga = run(SolverId::kGa, inst, GaConfig{}, iterations(0), 1);
  CHECK(ga.best_cost() == best);
  CHECK(ga.iterations_executed() == 0);

  Rng start(7);
  const Assignment first = random_assignment(inst.size(), start);
  const RunResult ts = run(SolverId::kTs, inst, TsConfig{}, iterations(0), 7);
  CHECK(ts.best() == first);
  CHECK(ts.iterations_executed() == 0);
  const RunResult sa = run(SolverId::kSa, inst, SaConfig{}, iterations(0), 7);
  CHECK(sa.best() == first);
  check_trace(ga, inst);
  check_trace(ts, inst);
  check_trace(sa, inst);
}

TEST_CASE("same seed gives the same best and trace") {
  const QapInstance inst = had12();
  for (SolverId id : kAllSolvers) {
    CAPTURE(to_string(id));
    const auto a = run(id, inst, default_config(id), iterations(300), 9);
    const auto b = run(id, inst, default_config(id), iterations(300), 9);
    CHECK(a.best_cost() == b.best_cost());
    CHECK(a.best() == b.best());
    CHECK(a.trace() == b.trace());
    check_trace(a, inst);
  }
}

TEST_CASE("target quality ends the run early") {
  const QapInstance inst = had12();
  StopCondition stop = default_stop(SolverId::kTs);
  stop.target_quality = static_cast<Cost>(std::lround(1652 * 1.017));
  bool reached = false;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const RunResult r = run(SolverId::kTs, inst, TsConfig{}, stop, seed);
    check_trace(r, inst);
    if (r.best_cost() <= *stop.target_quality) {
      reached = true;
      CHECK(r.iterations_executed() < *stop.max_iterations);
    }
  }
  CHECK(reached);
}

TEST_CASE("time limit bounds the run") {
  const QapInstance inst = load_instance(default_data_dir() / "had20.dat");
  StopCondition stop;
  stop.max_iterations = 1'000'000'000;
  stop.time_limit = std::chrono::milliseconds(200);
  for (SolverId id : kAllSolvers) {
    const RunResult r = run(id, inst, default_config(id), stop, 3);
    CHECK(r.elapsed() < std::chrono::milliseconds(1500));
    check_trace(r, inst);
  }
}

TEST_CASE("RunResult rejects inconsistent results") {
  const QapInstance inst = had12();
  const Assignment a = Assignment::identity(12);
  const Cost c = evaluate(inst, a);
  CHECK_THROWS_AS(RunResult(inst, a, c + 1, 0, {}, {{0, c + 1}}, 1), std::logic_error);
  CHECK_THROWS_AS(RunResult(inst, a, c, 1, {}, {{0, c}, {1, c + 5}}, 1), std::logic_error);
  CHECK_NOTHROW(RunResult(inst, a, c, 1, {}, {{0, c + 5}, {1, c}}, 1));
}

TEST_CASE("config json round trip") {
  GaConfig ga;
  ga.population_size = 40;
  GaConfig ga2;
  update_from_json(ga2, to_json(ga));
  CHECK(ga2.population_size == 40);

  TsConfig ts;
  update_from_json(ts, nlohmann::json{{"tenure", 7}});
  CHECK(ts.tenure == 7u);
  CHECK_THROWS_AS(update_from_json(ts, nlohmann::json{{"tenur", 7}}), ConfigError);

  SaConfig sa;
  update_from_json(sa, nlohmann::json{{"initial_temperature", nullptr}, {"alpha", 0.9}});
  CHECK_FALSE(sa.initial_temperature.has_value());
  CHECK(sa.alpha == 0.9);

  const auto defaults = defaults_json();
  CHECK(defaults.contains("GA"));
  CHECK(defaults.contains("TS"));
  CHECK(defaults.contains("SA"));
}
