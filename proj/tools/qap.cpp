// qap: solve, validate and benchmark QAPLIB instances.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "qap/bench.hpp"
#include "qap/config_io.hpp"
#include "qap/error.hpp"
#include "qap/qaplib_io.hpp"
#include "qap/report.hpp"
#include "qap/run.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct SolveOptions {
  std::string instance;
  std::string solver = "ts";
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> max_iters;
  std::optional<std::int64_t> time_limit_ms;
  std::optional<qap::Cost> target;
  std::string output = "text";
  // GA
  std::optional<std::size_t> population;
  std::optional<double> crossover_rate;
  std::optional<double> mutation_rate;
  std::optional<std::size_t> tournament;
  std::optional<std::size_t> elite;
  // TS
  std::optional<std::size_t> tenure;
  std::optional<double> candidate_fraction;
  // SA
  std::optional<double> initial_temperature;
  std::optional<double> alpha;
  std::optional<double> epsilon;
  std::optional<std::size_t> moves_per_temperature;
};

struct BenchOptions {
  std::string plan_path;
  bool table1 = false;
  std::vector<std::uint64_t> seeds;
  std::string out_dir;
  std::string format = "csv";
  bool charts = false;
  std::optional<std::size_t> parallelism;
  std::optional<std::uint64_t> max_iters;
  std::optional<std::int64_t> time_limit_ms;
  bool no_timing = false;
  std::string data_dir;
};

struct FileOptions {
  std::string instance;
  std::string solution;
  std::string output = "text";
};

// A bare instance name ("had12") resolves into the data directory; anything
// else is taken as a path.
fs::path resolve_instance(const std::string& arg) {
  const fs::path p(arg);
  if (fs::exists(p)) {
    return p;
  }
  if (!p.has_parent_path() && !p.has_extension()) {
    const fs::path candidate = qap::instance_path(qap::default_data_dir(), arg);
    if (fs::exists(candidate)) {
      return candidate;
    }
  }
  throw qap::UsageError(fmt::format("instance file '{}' does not exist", arg));
}

std::string permutation_text(const qap::Assignment& a) {
  std::string out;
  for (std::size_t k = 0; k < a.size(); ++k) {
    out += fmt::format("{}{}", k == 0 ? "" : " ", a[k] + 1);
  }
  return out;
}

json permutation_json(const qap::Assignment& a) {
  json arr = json::array();
  for (std::size_t k = 0; k < a.size(); ++k) {
    arr.push_back(a[k] + 1);
  }
  return arr;
}

template <typename T>
void reject_foreign(const std::optional<T>& flag, const char* name, qap::SolverId owner,
                    qap::SolverId chosen) {
  if (flag && owner != chosen) {
    throw qap::ConfigError(fmt::format("{} applies to the {} solver, not {}", name,
                                       qap::to_string(owner), qap::to_string(chosen)));
  }
}

qap::SolverConfig build_config(const SolveOptions& o, qap::SolverId id) {
  using qap::SolverId;
  reject_foreign(o.population, "--population", SolverId::kGa, id);
  reject_foreign(o.crossover_rate, "--crossover-rate", SolverId::kGa, id);
  reject_foreign(o.mutation_rate, "--mutation-rate", SolverId::kGa, id);
  reject_foreign(o.tournament, "--tournament-size", SolverId::kGa, id);
  reject_foreign(o.elite, "--elite-count", SolverId::kGa, id);
  reject_foreign(o.tenure, "--tenure", SolverId::kTs, id);
  reject_foreign(o.candidate_fraction, "--candidate-fraction", SolverId::kTs, id);
  reject_foreign(o.initial_temperature, "--initial-temperature", SolverId::kSa, id);
  reject_foreign(o.alpha, "--alpha", SolverId::kSa, id);
  reject_foreign(o.epsilon, "--epsilon", SolverId::kSa, id);
  reject_foreign(o.moves_per_temperature, "--moves-per-temperature", SolverId::kSa, id);

  switch (id) {
    case SolverId::kGa: {
      qap::GaConfig c;
      c.population_size = o.population.value_or(c.population_size);
      c.crossover_rate = o.crossover_rate.value_or(c.crossover_rate);
      c.mutation_rate = o.mutation_rate.value_or(c.mutation_rate);
      c.tournament_size = o.tournament.value_or(c.tournament_size);
      c.elite_count = o.elite.value_or(c.elite_count);
      return c;
    }
    case SolverId::kTs: {
      qap::TsConfig c;
      c.tenure = o.tenure ? o.tenure : c.tenure;
      c.candidate_fraction = o.candidate_fraction.value_or(c.candidate_fraction);
      return c;
    }
    case SolverId::kSa: {
      qap::SaConfig c;
      c.initial_temperature = o.initial_temperature ? o.initial_temperature : c.initial_temperature;
      c.alpha = o.alpha.value_or(c.alpha);
      c.epsilon = o.epsilon.value_or(c.epsilon);
      c.moves_per_temperature =
          o.moves_per_temperature ? o.moves_per_temperature : c.moves_per_temperature;
      return c;
    }
  }
  throw qap::ConfigError("unknown solver");
}

int run_solve(const SolveOptions& o) {
  const qap::SolverId id = qap::parse_solver_id(o.solver);
  const qap::SolverConfig cfg = build_config(o, id);
  qap::StopCondition stop = qap::default_stop(id);
  if (o.max_iters) {
    stop.max_iterations = o.max_iters;
  }
  if (o.time_limit_ms) {
    stop.time_limit = std::chrono::milliseconds(*o.time_limit_ms);
  }
  stop.target_quality = o.target;

  const qap::QapInstance inst = qap::load_instance(resolve_instance(o.instance));
  const qap::RunResult r = qap::run(id, inst, cfg, stop, o.seed);
  const auto known = qap::find_best_known(inst.name());
  const std::optional<double> diff =
      known ? std::optional(qap::relative_difference(r.best_cost(), *known)) : std::nullopt;

  if (o.output == "json") {
    json trace = json::array();
    for (const qap::TracePoint& p : r.trace()) {
      trace.push_back({p.iteration, p.best_cost});
    }
    json out{{"instance", inst.name()},
             {"n", inst.size()},
             {"solver", std::string(qap::to_string(id))},
             {"seed", o.seed},
             {"best_quality", r.best_cost()},
             {"best_known", known ? json(*known) : json(nullptr)},
             {"diff_percent", diff ? json(*diff) : json(nullptr)},
             {"iterations", r.iterations_executed()},
             {"elapsed_ms", r.elapsed().count()},
             {"formatted_time", qap::format_duration(r.elapsed().count())},
             {"permutation", permutation_json(r.best())},
             {"trace", trace},
             {"config", std::visit([](const auto& c) { return qap::to_json(c); }, cfg)},
             {"stop", qap::to_json(stop)}};
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  std::cout << fmt::format("instance: {} (n={})\n", inst.name(), inst.size());
  std::cout << fmt::format("solver: {}  seed: {}\n", qap::to_string(id), o.seed);
  std::cout << fmt::format("best quality: {}\n", r.best_cost());
  if (known) {
    std::cout << fmt::format("best known: {}\ndiff: {:.2f}%\n", *known, *diff);
  }
  std::cout << fmt::format("iterations: {}\n", r.iterations_executed());
  std::cout << fmt::format("elapsed: {} ({} ms)\n", qap::format_duration(r.elapsed().count()),
                           r.elapsed().count());
  std::cout << fmt::format("permutation: {}\n", permutation_text(r.best()));
  return 0;
}

int run_validate(const FileOptions& o) {
  const qap::QapInstance inst = qap::load_instance(resolve_instance(o.instance));
  if (!fs::exists(o.solution)) {
    throw qap::UsageError(fmt::format("solution file '{}' does not exist", o.solution));
  }
  const qap::SolutionFile sol = qap::load_solution(o.solution);
  const qap::SolutionCheck check = qap::validate_solution(inst, sol);
  const auto known = qap::find_best_known(inst.name());
  const char* reading = check.reading == qap::SolutionReading::kFacilityToLocation
                            ? "facility-to-location"
                            : "location-to-facility";
  if (o.output == "json") {
    json out{{"instance", inst.name()},
             {"cost", check.cost},
             {"header_objective", sol.objective},
             {"match", check.matches},
             {"reading", reading},
             {"best_known", known ? json(*known) : json(nullptr)}};
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << fmt::format("{}\n{}\n", check.cost, check.matches ? "MATCH" : "MISMATCH");
  }
  if (!check.matches) {
    std::cerr << "warning: " << check.warning << '\n';
    return 1;
  }
  return 0;
}

struct Stats {
  std::int64_t min = 0;
  std::int64_t max = 0;
  double mean = 0.0;
  double density = 0.0;
  bool symmetric = false;
  bool zero_diagonal = true;
};

Stats matrix_stats(const qap::SquareMatrix& m) {
  Stats s;
  s.min = m.min_entry();
  s.max = m.max_entry();
  double sum = 0.0;
  std::size_t nonzero = 0;
  for (std::int64_t v : m.values()) {
    sum += static_cast<double>(v);
    nonzero += v != 0 ? 1 : 0;
  }
  const auto cells = static_cast<double>(m.values().size());
  s.mean = sum / cells;
  s.density = static_cast<double>(nonzero) / cells;
  s.symmetric = m.is_symmetric();
  for (std::size_t k = 0; k < m.size(); ++k) {
    s.zero_diagonal = s.zero_diagonal && m(k, k) == 0;
  }
  return s;
}

int run_info(const FileOptions& o) {
  const qap::QapInstance inst = qap::load_instance(resolve_instance(o.instance));
  const auto known = qap::find_best_known(inst.name());
  const Stats flow = matrix_stats(inst.flow());
  const Stats dist = matrix_stats(inst.distance());
  if (o.output == "json") {
    auto to = [](const Stats& s) {
      return json{{"min", s.min},         {"max", s.max},
                  {"mean", s.mean},       {"density", s.density},
                  {"symmetric", s.symmetric}, {"zero_diagonal", s.zero_diagonal}};
    };
    json out{{"instance", inst.name()},
             {"n", inst.size()},
             {"flow", to(flow)},
             {"distance", to(dist)},
             {"best_known", known ? json(*known) : json(nullptr)}};
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  std::cout << fmt::format("instance: {}\nn: {}\n", inst.name(), inst.size());
  for (const auto& [label, s] : {std::pair{"flow", flow}, std::pair{"distance", dist}}) {
    std::cout << fmt::format(
        "{}: min {} max {} mean {:.3f} nonzero {:.1f}% symmetric {} diagonal {}\n", label, s.min,
        s.max, s.mean, 100.0 * s.density, s.symmetric ? "yes" : "no",
        s.zero_diagonal ? "zero" : "nonzero");
  }
  if (known) {
    std::cout << fmt::format("best known: {}\n", *known);
  }
  return 0;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw qap::UsageError(fmt::format("cannot write '{}'", path.string()));
  }
  out << content;
}

int run_bench_command(const BenchOptions& o) {
  qap::BenchPlan plan;
  if (o.table1) {
    plan = qap::table1_plan();
  } else {
    std::ifstream in(o.plan_path, std::ios::binary);
    if (!in) {
      throw qap::UsageError(fmt::format("cannot open plan '{}'", o.plan_path));
    }
    std::ostringstream text;
    text << in.rdbuf();
    plan = qap::parse_plan_json(text.str());
  }
  if (!o.seeds.empty()) {
    plan.seeds = o.seeds;
  }
  if (o.parallelism) {
    plan.parallelism = *o.parallelism;
  }
  if (o.max_iters) {
    plan.max_iterations = o.max_iters;
  }
  if (o.time_limit_ms) {
    plan.time_limit = std::chrono::milliseconds(*o.time_limit_ms);
  }
  if (!o.data_dir.empty()) {
    plan.data_dir = o.data_dir;
  }
  const qap::ReportFormat format = qap::parse_report_format(o.format);
  if (o.charts && o.out_dir.empty()) {
    throw qap::UsageError("--charts needs --out DIR");
  }

  const qap::BenchReport report = qap::run_bench(plan);
  for (const qap::BenchRow& row : report.rows) {
    if (!row.ok()) {
      std::cerr << fmt::format("error: {} {} seed {}: {}\n", row.instance,
                               qap::to_string(row.solver), row.seed, row.error);
    }
  }

  const qap::ReportOptions options{!o.no_timing};
  const std::string text = qap::emit_report(report, format, options);
  if (o.out_dir.empty()) {
    std::cout << text;
  } else {
    const fs::path dir(o.out_dir);
    fs::create_directories(dir);
    const char* ext = format == qap::ReportFormat::kCsv    ? "csv"
                      : format == qap::ReportFormat::kJson ? "json"
                                                           : "md";
    write_file(dir / fmt::format("report.{}", ext), text);
    if (o.charts) {
      write_file(dir / "diff.svg", qap::emit_chart(report.summary, qap::ChartMetric::kDiff));
      write_file(dir / "time.svg", qap::emit_chart(report.summary, qap::ChartMetric::kTime));
    }
  }
  return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadratic assignment solvers (GA, TS, SA) and QAPLIB benchmark harness"};
  app.set_help_all_flag("--help-all", "Expand all help");
  bool show_defaults = false;
  app.add_flag("--defaults", show_defaults, "Print every solver's default parameters as JSON");
  app.require_subcommand(0, 1);

  SolveOptions solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Run one solver on one instance");
  solve_cmd->add_option("instance", solve.instance, "Instance .dat path or bundled name")->required();
  solve_cmd->add_option("--solver", solve.solver, "ga, ts or sa")
      ->check(CLI::IsMember({"ga", "ts", "sa"}, CLI::ignore_case))
      ->capture_default_str();
  solve_cmd->add_option("--seed", solve.seed, "RNG seed")->capture_default_str();
  solve_cmd->add_option("--max-iters", solve.max_iters,
                        "Iteration budget (GA generations, TS moves, SA proposals)");
  solve_cmd->add_option("--time-limit-ms", solve.time_limit_ms, "Wall-clock budget")
      ->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--target", solve.target, "Stop once this cost is reached");
  solve_cmd->add_option("--output", solve.output, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  auto* ga = solve_cmd->add_option_group("GA");
  ga->add_option("--population", solve.population, "Population size");
  ga->add_option("--crossover-rate", solve.crossover_rate, "Crossover probability");
  ga->add_option("--mutation-rate", solve.mutation_rate, "Mutation probability per offspring");
  ga->add_option("--tournament-size", solve.tournament, "Tournament size");
  ga->add_option("--elite-count", solve.elite, "Parents kept per generation");
  auto* ts = solve_cmd->add_option_group("TS");
  ts->add_option("--tenure", solve.tenure, "Tabu tenure (default: n)");
  ts->add_option("--candidate-fraction", solve.candidate_fraction,
                 "Share of the neighbourhood scanned per iteration");
  auto* sa = solve_cmd->add_option_group("SA");
  sa->add_option("--initial-temperature", solve.initial_temperature,
                 "Initial temperature (default: derived)");
  sa->add_option("--alpha", solve.alpha, "Cooling factor");
  sa->add_option("--epsilon", solve.epsilon, "Final temperature");
  sa->add_option("--moves-per-temperature", solve.moves_per_temperature,
                 "Proposals per temperature level (default: 100 n)");

  BenchOptions bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Run an instances x solvers x seeds experiment");
  auto* plan_opt = bench_cmd->add_option("--plan", bench.plan_path, "JSON plan file");
  auto* table1_opt =
      bench_cmd->add_flag("--table1", bench.table1, "Built-in plan over the 12 reference instances");
  plan_opt->excludes(table1_opt);
  table1_opt->excludes(plan_opt);
  bench_cmd->add_option("--seeds", bench.seeds, "Comma-separated seeds")->delimiter(',');
  bench_cmd->add_option("--out", bench.out_dir, "Output directory (default: stdout)");
  bench_cmd->add_option("--format", bench.format, "csv, json or markdown")
      ->check(CLI::IsMember({"csv", "json", "markdown", "md"}))
      ->capture_default_str();
  bench_cmd->add_flag("--charts", bench.charts, "Also write diff.svg and time.svg");
  bench_cmd->add_option("--parallelism", bench.parallelism, "Worker threads")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--max-iters", bench.max_iters, "Iteration budget per run");
  bench_cmd->add_option("--time-limit-ms", bench.time_limit_ms, "Wall-clock budget per run")
      ->check(CLI::NonNegativeNumber);
  bench_cmd->add_flag("--no-timing", bench.no_timing, "Leave timing columns out of the report");
  bench_cmd->add_option("--data-dir", bench.data_dir, "QAPLIB directory (default: $QAP_DATA_DIR)");

  FileOptions validate;
  CLI::App* validate_cmd =
      app.add_subcommand("validate", "Evaluate a .sln file against its instance");
  validate_cmd->add_option("instance", validate.instance, "Instance .dat path")->required();
  validate_cmd->add_option("solution", validate.solution, "Solution .sln path")->required();
  validate_cmd->add_option("--output", validate.output, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  FileOptions info;
  CLI::App* info_cmd = app.add_subcommand("info", "Print instance size and matrix statistics");
  info_cmd->add_option("instance", info.instance, "Instance .dat path")->required();
  info_cmd->add_option("--output", info.output, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (show_defaults) {
      std::cout << qap::defaults_json().dump(2) << '\n';
      return 0;
    }
    if (solve_cmd->parsed()) {
      solve.solver = qap::to_lower(solve.solver);
      return run_solve(solve);
    }
    if (bench_cmd->parsed()) {
      if (!bench.table1 && bench.plan_path.empty()) {
        std::cerr << "error: bench needs --plan FILE or --table1\n";
        return 2;
      }
      return run_bench_command(bench);
    }
    if (validate_cmd->parsed()) {
      return run_validate(validate);
    }
    if (info_cmd->parsed()) {
      return run_info(info);
    }
    std::cerr << app.help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
