#include "qap/bench.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <map>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "qap/config_io.hpp"
#include "qap/error.hpp"
#include "qap/qaplib_io.hpp"

namespace qap {

using nlohmann::json;

void BenchPlan::validate() const {
  if (instances.empty()) {
    throw ConfigError("bench plan lists no instances");
  }
  if (solvers.empty()) {
    throw ConfigError("bench plan lists no solvers");
  }
  if (seeds.empty()) {
    throw ConfigError("bench plan lists no seeds");
  }
  if (parallelism < 1) {
    throw ConfigError("bench parallelism must be at least 1");
  }
  ga.validate();
  ts.validate();
  sa.validate();
  for (SolverId id : solvers) {
    stop_for(id).validate();
  }
}

SolverConfig BenchPlan::config_for(SolverId id) const {
  switch (id) {
    case SolverId::kGa:
      return ga;
    case SolverId::kTs:
      return ts;
    case SolverId::kSa:
      return sa;
  }
  throw ConfigError("unknown solver id");
}

StopCondition BenchPlan::stop_for(SolverId id) const {
  StopCondition stop = default_stop(id);
  if (max_iterations) {
    stop.max_iterations = max_iterations;
  }
  stop.time_limit = time_limit;
  return stop;
}

BenchPlan table1_plan(std::vector<std::uint64_t> seeds) {
  BenchPlan plan;
  for (const BestKnownEntry& e : best_known_registry()) {
    plan.instances.emplace_back(e.name);
  }
  plan.solvers.assign(std::begin(kAllSolvers), std::end(kAllSolvers));
  plan.seeds = std::move(seeds);
  plan.time_limit = kTable1CellTimeLimit;
  plan.data_dir = default_data_dir();
  return plan;
}

BenchPlan parse_plan_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("plan is not valid JSON: {}", e.what()));
  }
  if (!doc.is_object()) {
    throw ConfigError("plan must be a JSON object");
  }
  BenchPlan plan;
  plan.solvers.assign(std::begin(kAllSolvers), std::end(kAllSolvers));
  plan.seeds.assign(std::begin(kDefaultSeeds), std::end(kDefaultSeeds));
  plan.data_dir = default_data_dir();
  bool has_instances = false;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "instances") {
        plan.instances = value.get<std::vector<std::string>>();
        has_instances = true;
      } else if (key == "solvers") {
        plan.solvers.clear();
        for (const auto& s : value) {
          plan.solvers.push_back(parse_solver_id(s.get<std::string>()));
        }
      } else if (key == "seeds") {
        plan.seeds = value.get<std::vector<std::uint64_t>>();
      } else if (key == "max_iterations") {
        if (!value.is_null()) {
          plan.max_iterations = value.get<std::uint64_t>();
        }
      } else if (key == "time_limit_ms") {
        if (!value.is_null()) {
          plan.time_limit = std::chrono::milliseconds(value.get<std::int64_t>());
        }
      } else if (key == "parallelism") {
        plan.parallelism = value.get<std::size_t>();
      } else if (key == "data_dir") {
        plan.data_dir = value.get<std::string>();
      } else if (key == "ga") {
        update_from_json(plan.ga, value);
      } else if (key == "ts") {
        update_from_json(plan.ts, value);
      } else if (key == "sa") {
        update_from_json(plan.sa, value);
      } else {
        throw ConfigError(fmt::format("unknown plan key '{}'", key));
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("bad plan value: {}", e.what()));
  }
  if (!has_instances) {
    throw ConfigError("plan needs an \"instances\" list");
  }
  return plan;
}

bool BenchReport::ok() const noexcept {
  return std::all_of(rows.begin(), rows.end(), [](const BenchRow& r) { return r.ok(); });
}

double relative_difference(Cost best_quality, Cost best_known) {
  if (best_known <= 0) {
    throw UsageError(fmt::format("relative difference needs a positive best known value, got {}",
                                 best_known));
  }
  return static_cast<double>(best_quality - best_known) / static_cast<double>(best_known) * 100.0;
}

std::string format_duration(std::int64_t ms) {
  ms = std::max<std::int64_t>(ms, 0);
  const std::int64_t tenths = ms / 100;
  const std::int64_t minutes = tenths / 600;
  const std::int64_t seconds = (tenths / 10) % 60;
  return fmt::format("{:02}:{:02}.{}", minutes, seconds, tenths % 10);
}

std::int64_t median(std::vector<std::int64_t> values) {
  if (values.empty()) {
    return 0;
  }
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) {
    return values[mid];
  }
  return (values[mid - 1] + values[mid]) / 2;
}

std::vector<SummaryCell> summarize(const std::vector<BenchRow>& rows) {
  std::vector<SummaryCell> cells;
  std::vector<std::vector<std::int64_t>> times;
  std::map<std::pair<std::string, SolverId>, std::size_t> index;
  for (const BenchRow& row : rows) {
    const auto key = std::pair{row.instance, row.solver};
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, cells.size()).first;
      SummaryCell cell;
      cell.instance = row.instance;
      cell.solver = row.solver;
      cells.push_back(std::move(cell));
      times.emplace_back();
    }
    SummaryCell& cell = cells[it->second];
    ++cell.runs;
    if (!row.ok()) {
      ++cell.failures;
      continue;
    }
    if (row.best_known) {
      cell.best_known = row.best_known;
    }
    if (row.best_quality && (!cell.best_quality || *row.best_quality < *cell.best_quality)) {
      cell.best_quality = row.best_quality;
    }
    times[it->second].push_back(row.elapsed_ms);
  }
  for (std::size_t k = 0; k < cells.size(); ++k) {
    SummaryCell& cell = cells[k];
    if (cell.best_quality && cell.best_known) {
      cell.diff_percent = relative_difference(*cell.best_quality, *cell.best_known);
    }
    cell.median_elapsed_ms = median(times[k]);
    cell.formatted_time = format_duration(cell.median_elapsed_ms);
  }
  return cells;
}

namespace {

struct LoadedInstance {
  std::optional<QapInstance> instance;
  std::optional<Cost> best_known;
  std::string error;
};

LoadedInstance load_for_bench(const std::filesystem::path& data_dir, const std::string& name) {
  LoadedInstance out;
  const auto path = instance_path(data_dir, name);
  try {
    if (!std::filesystem::exists(path)) {
      out.error = fmt::format("instance file '{}' not found", path.string());
      return out;
    }
    out.instance = load_instance(path);
    out.best_known = find_best_known(name);
    const auto sln = solution_path(data_dir, name);
    if (!out.best_known && std::filesystem::exists(sln)) {
      out.best_known = load_solution(sln).objective;
    }
  } catch (const std::exception& e) {
    out.instance.reset();
    out.error = e.what();
  }
  return out;
}

}  // namespace

BenchReport run_bench(const BenchPlan& plan) {
  plan.validate();

  std::vector<LoadedInstance> loaded;
  loaded.reserve(plan.instances.size());
  for (const std::string& name : plan.instances) {
    loaded.push_back(load_for_bench(plan.data_dir, name));
  }

  struct Cell {
    std::size_t instance;
    SolverId solver;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < plan.instances.size(); ++i) {
    for (SolverId s : plan.solvers) {
      for (std::uint64_t seed : plan.seeds) {
        cells.push_back({i, s, seed});
      }
    }
  }

  std::vector<BenchRow> rows(cells.size());
  auto execute = [&](std::size_t k) {
    const Cell& cell = cells[k];
    const LoadedInstance& src = loaded[cell.instance];
    BenchRow& row = rows[k];
    row.instance = to_lower(plan.instances[cell.instance]);
    row.solver = cell.solver;
    row.seed = cell.seed;
    row.best_known = src.best_known;
    row.formatted_time = format_duration(0);
    if (!src.instance) {
      row.error = src.error;
      return;
    }
    try {
      const RunResult r = run(cell.solver, *src.instance, plan.config_for(cell.solver),
                              plan.stop_for(cell.solver), cell.seed);
      row.best_quality = r.best_cost();
      if (row.best_known) {
        row.diff_percent = relative_difference(r.best_cost(), *row.best_known);
      }
      row.elapsed_ms = r.elapsed().count();
      row.formatted_time = format_duration(row.elapsed_ms);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  };

  const std::size_t workers = std::min(plan.parallelism, cells.size());
  if (workers <= 1) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      execute(k);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < cells.size(); k = next++) {
          execute(k);
        }
      });
    }
  }

  BenchReport report;
  report.rows = std::move(rows);
  report.summary = summarize(report.rows);
  return report;
}

}  // namespace qap
