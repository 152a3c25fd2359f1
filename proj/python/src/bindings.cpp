#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <json.hpp>

#include "qap/bench.hpp"
#include "qap/config_io.hpp"
#include "qap/error.hpp"
#include "qap/qaplib_io.hpp"
#include "qap/report.hpp"
#include "qap/rng.hpp"
#include "qap/run.hpp"

namespace py = pybind11;
using namespace qap;

namespace {

using Rows = std::vector<std::vector<std::int64_t>>;

SquareMatrix matrix_from(const Rows& rows) {
  const std::size_t n = rows.size();
  std::vector<std::int64_t> values;
  values.reserve(n * n);
  for (const auto& r : rows) {
    if (r.size() != n) {
      throw ValidationError("matrix must be square");
    }
    values.insert(values.end(), r.begin(), r.end());
  }
  return SquareMatrix(n, std::move(values));
}

Rows rows_of(const SquareMatrix& m) {
  Rows out(m.size());
  for (std::size_t r = 0; r < m.size(); ++r) {
    out[r].assign(m.row(r).begin(), m.row(r).end());
  }
  return out;
}

std::vector<std::size_t> perm_of(const Assignment& a) { return {a.perm().begin(), a.perm().end()}; }

SolverConfig config_from(SolverId id, const std::string& config_json) {
  SolverConfig cfg = default_config(id);
  if (!config_json.empty()) {
    const auto j = nlohmann::json::parse(config_json);
    std::visit([&](auto& c) { update_from_json(c, j); }, cfg);
  }
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quadratic assignment solvers (GA, TS, SA) over QAPLIB instances";

  auto base = py::register_exception<Error>(m, "QapError", PyExc_RuntimeError);
  py::register_exception<UsageError>(m, "UsageError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<LookupError>(m, "LookupError", base.ptr());

  py::class_<QapInstance>(m, "Instance")
      .def(py::init([](const Rows& flow, const Rows& distance, std::string name) {
             return QapInstance(std::move(name), matrix_from(flow), matrix_from(distance));
           }),
           py::arg("flow"), py::arg("distance"), py::arg("name") = "instance")
      .def_property_readonly("name", &QapInstance::name)
      .def_property_readonly("size", &QapInstance::size)
      .def_property_readonly("flow", [](const QapInstance& i) { return rows_of(i.flow()); })
      .def_property_readonly("distance", [](const QapInstance& i) { return rows_of(i.distance()); })
      .def("__len__", &QapInstance::size)
      .def("__repr__", [](const QapInstance& i) {
        return "<Instance " + i.name() + " n=" + std::to_string(i.size()) + ">";
      });

  py::class_<SolutionFile>(m, "Solution")
      .def_readonly("n", &SolutionFile::n)
      .def_readonly("objective", &SolutionFile::objective)
      .def_property_readonly("perm", [](const SolutionFile& s) { return perm_of(s.perm); });

  py::class_<RunResult>(m, "RunResult")
      .def_property_readonly("best", [](const RunResult& r) { return perm_of(r.best()); })
      .def_property_readonly("best_cost", &RunResult::best_cost)
      .def_property_readonly("iterations", &RunResult::iterations_executed)
      .def_property_readonly("elapsed_ms", [](const RunResult& r) { return r.elapsed().count(); })
      .def_property_readonly("seed", &RunResult::seed)
      .def_property_readonly("trace", [](const RunResult& r) {
        std::vector<std::pair<std::uint64_t, Cost>> out;
        for (const TracePoint& p : r.trace()) {
          out.emplace_back(p.iteration, p.best_cost);
        }
        return out;
      });

  m.def("parse_instance", [](const std::string& text, std::string name) {
    return parse_instance(std::string_view(text), std::move(name));
  }, py::arg("text"), py::arg("name") = "instance");
  m.def("load_instance", &load_instance, py::arg("path"));
  m.def("serialize_instance", &serialize_instance);
  m.def("parse_solution", [](const std::string& text) { return parse_solution(std::string_view(text)); });
  m.def("load_solution", &load_solution, py::arg("path"));

  m.def("evaluate", [](const QapInstance& inst, std::vector<std::size_t> perm) {
    return evaluate(inst, Assignment(std::move(perm)));
  }, py::arg("instance"), py::arg("perm"));
  m.def("swap_delta", [](const QapInstance& inst, std::vector<std::size_t> perm, std::size_t i,
                         std::size_t j) {
    return swap_delta(inst, Assignment(std::move(perm)), {i, j});
  }, py::arg("instance"), py::arg("perm"), py::arg("i"), py::arg("j"));
  m.def("apply_swap", [](std::vector<std::size_t> perm, std::size_t i, std::size_t j) {
    return perm_of(apply_swap(Assignment(std::move(perm)), {i, j}));
  }, py::arg("perm"), py::arg("i"), py::arg("j"));
  m.def("random_assignment", [](std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    return perm_of(random_assignment(n, rng));
  }, py::arg("n"), py::arg("seed"));

  m.def("validate_solution", [](const QapInstance& inst, const SolutionFile& sol) {
    const SolutionCheck c = validate_solution(inst, sol);
    py::dict out;
    out["cost"] = c.cost;
    out["matches"] = c.matches;
    out["reading"] = c.reading == SolutionReading::kFacilityToLocation ? "facility-to-location"
                                                                       : "location-to-facility";
    out["assignment"] = perm_of(c.assignment);
    out["warning"] = c.warning;
    return out;
  });

  m.def("best_known", &best_known, py::arg("name"));
  m.def("best_known_registry", [] {
    std::vector<std::tuple<std::string, std::size_t, Cost>> out;
    for (const BestKnownEntry& e : best_known_registry()) {
      out.emplace_back(std::string(e.name), e.size, e.best_known);
    }
    return out;
  });
  m.def("default_data_dir", &default_data_dir);
  m.def("relative_difference", &relative_difference, py::arg("best_quality"), py::arg("best_known"));
  m.def("format_duration", &format_duration, py::arg("ms"));

  m.def("_solve", [](const QapInstance& inst, const std::string& solver, std::uint64_t seed,
                     std::optional<std::uint64_t> max_iterations,
                     std::optional<std::int64_t> time_limit_ms, std::optional<Cost> target,
                     const std::string& config_json) {
    const SolverId id = parse_solver_id(solver);
    StopCondition stop = default_stop(id);
    if (max_iterations) {
      stop.max_iterations = max_iterations;
    }
    if (time_limit_ms) {
      stop.time_limit = std::chrono::milliseconds(*time_limit_ms);
    }
    stop.target_quality = target;
    const SolverConfig cfg = config_from(id, config_json);
    py::gil_scoped_release release;
    return run(id, inst, cfg, stop, seed);
  });
  m.def("_defaults_json", [] { return defaults_json().dump(); });
  m.def("_bench_json", [](const std::string& plan_json) {
    const BenchPlan plan = parse_plan_json(plan_json);
    BenchReport report;
    {
      py::gil_scoped_release release;
      report = run_bench(plan);
    }
    return emit_report(report, ReportFormat::kJson);
  });
}
