// One PASS/FAIL line per acceptance criterion. Exit status is non-zero when any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <sys/wait.h>
#include <thread>
#include <unistd.h>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "oracles.hpp"
#include "qap/annealing.hpp"
#include "qap/bench.hpp"
#include "qap/qaplib_io.hpp"
#include "qap/report.hpp"
#include "qap/rng.hpp"
#include "qap/run.hpp"

namespace fs = std::filesystem;
using namespace qap;

namespace {

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, std::string note) {
    if (!ok) {
      pass = false;
      notes.push_back(std::move(note));
    }
  }
  void info(std::string note) { notes.push_back(std::move(note)); }
};

// Every RunResult produced in criteria 3 and 4, checked again by criterion 8.
struct RunRecord {
  std::string label;
  const QapInstance* instance;
  RunResult result;
};
std::vector<RunRecord> g_runs;

RunResult recorded_run(const std::string& label, const QapInstance& inst, SolverId id,
                       const StopCondition& stop, std::uint64_t seed) {
  RunResult r = run(id, inst, default_config(id), stop, seed);
  g_runs.push_back({label, &inst, r});
  return r;
}

std::string run_cli(const std::string& args) {
  const std::string cmd = fmt::format("\"{}\" {} 2>/dev/null", QAP_CLI_PATH, args);
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    return {};
  }
  std::string out;
  std::array<char, 4096> buf{};
  for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0;) {
    out.append(buf.data(), n);
  }
  ::pclose(pipe);
  return out;
}

Verdict oracle_equivalence() {
  Verdict v;
  std::mt19937 gen(2718);
  std::size_t moves = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + gen() % 7;
    const QapInstance inst = oracle::random_instance(n, gen, 50);
    const auto perm = oracle::random_perm(n, gen);
    const Assignment a(perm);
    const Cost cost = evaluate(inst, a);
    v.require(cost == oracle::expanded_cost(inst, perm),
              fmt::format("evaluate differs from the expanded sum at trial {}", trial));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        ++moves;
        const Assignment swapped = apply_swap(a, {i, j});
        const Cost full =
            oracle::expanded_cost(inst, {swapped.perm().begin(), swapped.perm().end()}) - cost;
        v.require(swap_delta(inst, a, {i, j}) == full,
                  fmt::format("swap_delta wrong at trial {} move ({}, {})", trial, i, j));
      }
    }
  }
  v.info(fmt::format("200 instances, {} swap moves", moves));
  return v;
}

Verdict table1_validation() {
  Verdict v;
  const fs::path dir = default_data_dir();
  std::size_t parsed = 0;
  std::size_t validated = 0;
  for (const BestKnownEntry& e : best_known_registry()) {
    const fs::path dat = instance_path(dir, e.name);
    if (!fs::exists(dat)) {
      v.require(false, fmt::format("{}: instance file not bundled", e.name));
      continue;
    }
    try {
      const QapInstance inst = load_instance(dat);
      v.require(inst.size() == e.size, fmt::format("{}: n = {}, expected {}", e.name, inst.size(), e.size));
      ++parsed;
      const fs::path sln = solution_path(dir, e.name);
      if (fs::exists(sln)) {
        const SolutionCheck check = validate_solution(inst, load_solution(sln));
        v.require(check.matches && check.cost == e.best_known,
                  fmt::format("{}: solution evaluates to {}, expected {}", e.name, check.cost,
                              e.best_known));
        ++validated;
      }
    } catch (const std::exception& ex) {
      v.require(false, fmt::format("{}: {}", e.name, ex.what()));
    }
  }
  v.info(fmt::format("{}/12 parsed, {} solution files validated", parsed, validated));
  return v;
}

Verdict exact_optimum_recovery() {
  Verdict v;
  std::mt19937 gen(3141);
  static std::vector<QapInstance> instances;
  instances.reserve(20);
  std::map<SolverId, int> solved;
  for (int trial = 0; trial < 20; ++trial) {
    instances.push_back(oracle::random_instance(7, gen, 30));
    const QapInstance& inst = instances.back();
    const Cost optimum = oracle::exhaustive_optimum(inst).cost;
    for (SolverId id : kAllSolvers) {
      Cost best = INT64_MAX;
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        best = std::min(best, recorded_run(fmt::format("random7#{} {}", trial, to_string(id)), inst,
                                           id, default_stop(id), seed)
                                  .best_cost());
      }
      v.require(best == optimum, fmt::format("{} instance {}: {} vs optimum {}", to_string(id),
                                             trial, best, optimum));
      solved[id] += best == optimum ? 1 : 0;
    }
  }
  v.info(fmt::format("optimum reached GA {}/20 TS {}/20 SA {}/20", solved[SolverId::kGa],
                     solved[SolverId::kTs], solved[SolverId::kSa]));
  return v;
}

Verdict reference_quality() {
  Verdict v;
  struct Target {
    const char* instance;
    SolverId solver;
    double max_diff;
  };
  const Target targets[] = {
      {"esc16i", SolverId::kGa, 0.0}, {"had14", SolverId::kGa, 0.0}, {"had12", SolverId::kGa, 1.0},
      {"esc16i", SolverId::kSa, 0.0}, {"had14", SolverId::kSa, 0.0}, {"had12", SolverId::kSa, 1.0},
      {"esc16i", SolverId::kTs, 3.0}, {"had12", SolverId::kTs, 2.5}, {"had20", SolverId::kTs, 2.5},
  };
  static std::map<std::string, QapInstance> loaded;
  constexpr std::chrono::milliseconds kCellLimit{60'000};
  for (const Target& t : targets) {
    auto it = loaded.find(t.instance);
    if (it == loaded.end()) {
      it = loaded.emplace(t.instance, load_instance(instance_path(default_data_dir(), t.instance))).first;
    }
    const QapInstance& inst = it->second;
    StopCondition stop = default_stop(t.solver);
    stop.time_limit = kCellLimit;
    Cost best = INT64_MAX;
    const auto start = std::chrono::steady_clock::now();
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      best = std::min(best, recorded_run(fmt::format("{} {}", t.instance, to_string(t.solver)), inst,
                                         t.solver, stop, seed)
                                .best_cost());
    }
    const auto seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double diff = relative_difference(best, best_known(t.instance));
    const bool ok = diff <= t.max_diff + 1e-12;
    v.require(ok, fmt::format("{} {}: best {} diff {:.2f}% exceeds {:.2f}%", to_string(t.solver),
                              t.instance, best, diff, t.max_diff));
    if (ok) {
      v.info(fmt::format("{} {}: {} ({:.2f}%, {:.1f} s)", to_string(t.solver), t.instance, best, diff,
                         seconds));
    }
  }
  return v;
}

Verdict timing_format(std::chrono::milliseconds cell_limit) {
  Verdict v;
  v.require(format_duration(10400) == "00:10.4", "10400 ms not rendered as 00:10.4");
  v.require(format_duration(33600) == "00:33.6", "33600 ms not rendered as 00:33.6");

  BenchPlan plan = table1_plan();
  plan.time_limit = cell_limit;
  plan.parallelism = std::max(1u, std::thread::hardware_concurrency());
  const BenchReport report = run_bench(plan);
  std::size_t ran = 0;
  std::size_t failed = 0;
  std::int64_t slowest = 0;
  const std::int64_t allowed = cell_limit.count() + 1000;  // one clock-check stride of slack
  for (const BenchRow& row : report.rows) {
    if (!row.ok()) {
      ++failed;
      continue;
    }
    ++ran;
    slowest = std::max(slowest, row.elapsed_ms);
    v.require(row.elapsed_ms <= allowed,
              fmt::format("{} {} seed {} took {} ms", row.instance, to_string(row.solver), row.seed,
                          row.elapsed_ms));
  }
  v.require(failed == 0, fmt::format("{} of {} table1 cells could not run (instance files missing)",
                                     failed, report.rows.size()));
  v.info(fmt::format("{} cells ran within {} ms each (slowest {} ms)", ran, cell_limit.count(),
                     slowest));
  for (const SummaryCell& c : report.summary) {
    if (c.diff_percent) {
      v.info(fmt::format("  {} {}: diff {:.2f}% time {}", c.instance, to_string(c.solver),
                         *c.diff_percent, c.formatted_time));
    }
  }
  return v;
}

Verdict determinism() {
  Verdict v;
  const std::string had12 = instance_path(default_data_dir(), "had12").string();
  for (const char* solver : {"ga", "ts", "sa"}) {
    const std::string args =
        fmt::format("solve {} --solver {} --max-iters 500 --seed 11 --output json", had12, solver);
    const std::string a = run_cli(args);
    const std::string b = run_cli(args);
    try {
      const auto ja = nlohmann::json::parse(a);
      const auto jb = nlohmann::json::parse(b);
      v.require(ja["best_quality"] == jb["best_quality"] && ja["trace"] == jb["trace"] &&
                    ja["permutation"] == jb["permutation"],
                fmt::format("{}: two processes disagree", solver));
    } catch (const std::exception& e) {
      v.require(false, fmt::format("{}: unreadable solve output ({})", solver, e.what()));
    }
  }

  const fs::path plan = fs::temp_directory_path() / fmt::format("qap_acceptance_{}.json", ::getpid());
  std::ofstream(plan) << R"({"instances": ["had12", "had14", "chr12c", "esc16i"],
                             "seeds": [1, 2, 3, 4, 5], "max_iterations": 200})";
  const std::string serial =
      run_cli(fmt::format("bench --plan {} --parallelism 1 --no-timing", plan.string()));
  const std::string parallel =
      run_cli(fmt::format("bench --plan {} --parallelism 8 --no-timing", plan.string()));
  fs::remove(plan);
  v.require(!serial.empty(), "bench produced no csv");
  v.require(serial == parallel, "csv differs between parallelism 1 and 8");
  v.info(fmt::format("3 solve pairs identical, {} csv bytes identical across parallelism",
                     serial.size()));
  return v;
}

Verdict statistics() {
  Verdict v;
  Rng rng(99);
  for (const auto [d, t] : {std::pair{3, 10.0}, std::pair{10, 10.0}, std::pair{25, 12.5}}) {
    int accepted = 0;
    for (int k = 0; k < 10000; ++k) {
      accepted += metropolis_accept(d, t, rng) ? 1 : 0;
    }
    const double rate = accepted / 10000.0;
    const double expected = std::exp(-d / t);
    v.require(std::abs(rate - expected) <= 0.03,
              fmt::format("delta {} T {}: rate {:.4f} vs {:.4f}", d, t, rate, expected));
    v.info(fmt::format("delta {} T {}: rate {:.4f} expected {:.4f}", d, t, rate, expected));
  }
  std::map<std::vector<std::size_t>, int> counts;
  for (int k = 0; k < 6000; ++k) {
    const Assignment a = random_assignment(3, rng);
    counts[{a.perm().begin(), a.perm().end()}]++;
  }
  v.require(counts.size() == 6, "not all 6 permutations of size 3 were drawn");
  double worst = 0.0;
  for (const auto& [perm, count] : counts) {
    worst = std::max(worst, std::abs(count / 6000.0 - 1.0 / 6.0));
  }
  v.require(worst <= 0.05, fmt::format("permutation frequency off by {:.4f}", worst));
  v.info(fmt::format("largest permutation frequency deviation {:.4f}", worst));
  return v;
}

Verdict traces_and_feasibility() {
  Verdict v;
  for (const RunRecord& rec : g_runs) {
    const RunResult& r = rec.result;
    bool ok = is_permutation(r.best().perm()) && r.best().size() == rec.instance->size() &&
              evaluate(*rec.instance, r.best()) == r.best_cost() && !r.trace().empty() &&
              r.trace().back().best_cost == r.best_cost();
    for (std::size_t k = 1; ok && k < r.trace().size(); ++k) {
      ok = r.trace()[k].best_cost <= r.trace()[k - 1].best_cost &&
           r.trace()[k].iteration >= r.trace()[k - 1].iteration;
    }
    v.require(ok, fmt::format("{} seed {}: bad trace or infeasible result", rec.label, r.seed()));
  }
  v.require(!g_runs.empty(), "no runs recorded");
  v.info(fmt::format("{} runs checked", g_runs.size()));
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  std::chrono::milliseconds cell_limit = kTable1CellTimeLimit;
  if (argc > 1) {
    cell_limit = std::chrono::milliseconds(std::stoll(argv[1]));
  }
  struct Criterion {
    int id;
    const char* title;
    double budget_s;  // 0: no runtime bound
    std::function<Verdict()> check;
  };
  const std::vector<Criterion> criteria = {
      {1, "oracle equivalence", 10.0, oracle_equivalence},
      {2, "reference instances and solution files", 1.0, table1_validation},
      {3, "exact optimum recovery at n=7", 60.0, exact_optimum_recovery},
      {4, "reference quality at desk scale", 0.0, reference_quality},
      {5, "time format and table1 cell limit", 0.0, [&] { return timing_format(cell_limit); }},
      {6, "determinism across processes and parallelism", 30.0, determinism},
      {7, "statistical properties", 5.0, statistics},
      {8, "monotone traces and feasible results", 0.0, traces_and_feasibility},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v.require(false, fmt::format("exception: {}", e.what()));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0.0) {
      v.require(secs < c.budget_s, fmt::format("took {:.2f} s, limit {:.0f} s", secs, c.budget_s));
    }
    failures += v.pass ? 0 : 1;
    fmt::print("{} criterion {}: {} ({:.2f} s)\n", v.pass ? "PASS" : "FAIL", c.id, c.title, secs);
    for (const std::string& note : v.notes) {
      fmt::print("    {}\n", note);
    }
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
