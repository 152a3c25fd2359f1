#include "qap/report.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include <fmt/format.h>
#include <json.hpp>

#include "qap/error.hpp"
#include "qap/qaplib_io.hpp"

namespace qap {

using nlohmann::json;

ReportFormat parse_report_format(std::string_view name) {
  const std::string key = to_lower(name);
  if (key == "csv") {
    return ReportFormat::kCsv;
  }
  if (key == "json") {
    return ReportFormat::kJson;
  }
  if (key == "markdown" || key == "md") {
    return ReportFormat::kMarkdown;
  }
  throw ConfigError(fmt::format("unknown report format '{}' (expected csv, json or markdown)", name));
}

namespace {

template <typename T>
std::string or_empty(const std::optional<T>& v) {
  return v ? fmt::format("{}", *v) : std::string{};
}

std::string percent2(const std::optional<double>& v) {
  return v ? fmt::format("{:.2f}", *v) : std::string{};
}

template <typename T>
json or_null(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

std::string emit_csv(const BenchReport& report, const ReportOptions& options) {
  std::string out = "instance,solver,seed,best_quality,best_known,diff_percent";
  if (options.include_timing) {
    out += ",elapsed_ms,formatted_time";
  }
  out += '\n';
  for (const BenchRow& r : report.rows) {
    out += fmt::format("{},{},{},{},{},{}", r.instance, to_string(r.solver), r.seed,
                       or_empty(r.best_quality), or_empty(r.best_known), percent2(r.diff_percent));
    if (options.include_timing) {
      out += fmt::format(",{},{}", r.elapsed_ms, r.formatted_time);
    }
    out += '\n';
  }
  return out;
}

json row_json(const BenchRow& r, const ReportOptions& options) {
  json j{{"instance", r.instance},
         {"solver", std::string(to_string(r.solver))},
         {"seed", r.seed},
         {"best_quality", or_null(r.best_quality)},
         {"best_known", or_null(r.best_known)},
         {"diff_percent", or_null(r.diff_percent)},
         {"error", r.ok() ? json(nullptr) : json(r.error)}};
  if (options.include_timing) {
    j["elapsed_ms"] = r.elapsed_ms;
    j["formatted_time"] = r.formatted_time;
  }
  return j;
}

json cell_json(const SummaryCell& c, const ReportOptions& options) {
  json j{{"instance", c.instance},
         {"solver", std::string(to_string(c.solver))},
         {"best_quality", or_null(c.best_quality)},
         {"best_known", or_null(c.best_known)},
         {"diff_percent", or_null(c.diff_percent)},
         {"runs", c.runs},
         {"failures", c.failures}};
  if (options.include_timing) {
    j["median_elapsed_ms"] = c.median_elapsed_ms;
    j["formatted_time"] = c.formatted_time;
  }
  return j;
}

std::string emit_json(const BenchReport& report, const ReportOptions& options) {
  json rows = json::array();
  for (const BenchRow& r : report.rows) {
    rows.push_back(row_json(r, options));
  }
  json summary = json::array();
  for (const SummaryCell& c : report.summary) {
    summary.push_back(cell_json(c, options));
  }
  return json{{"rows", rows}, {"summary", summary}}.dump(2) + "\n";
}

// Instance and solver orders of first appearance.
struct Layout {
  std::vector<std::string> instances;
  std::vector<SolverId> solvers;

  explicit Layout(std::span<const SummaryCell> summary) {
    for (const SummaryCell& c : summary) {
      if (std::find(instances.begin(), instances.end(), c.instance) == instances.end()) {
        instances.push_back(c.instance);
      }
      if (std::find(solvers.begin(), solvers.end(), c.solver) == solvers.end()) {
        solvers.push_back(c.solver);
      }
    }
  }
};

const SummaryCell* find_cell(std::span<const SummaryCell> summary, const std::string& instance,
                             SolverId solver) {
  for (const SummaryCell& c : summary) {
    if (c.instance == instance && c.solver == solver) {
      return &c;
    }
  }
  return nullptr;
}

std::string emit_markdown(const BenchReport& report, const ReportOptions& options) {
  const Layout layout(report.summary);
  auto table = [&](std::string_view title, std::string_view suffix, auto cell_text) {
    std::string out = fmt::format("### {}\n\n| Problem Name |", title);
    std::string rule = "|---|";
    for (SolverId s : layout.solvers) {
      out += fmt::format(" {}{} |", to_string(s), suffix);
      rule += "---:|";
    }
    out += "\n" + rule + "\n";
    for (const std::string& inst : layout.instances) {
      out += fmt::format("| {} |", inst);
      for (SolverId s : layout.solvers) {
        const SummaryCell* c = find_cell(report.summary, inst, s);
        std::string text = "-";
        if (c != nullptr) {
          text = c->failures == c->runs ? "error" : cell_text(*c);
        }
        out += fmt::format(" {} |", text);
      }
      out += "\n";
    }
    return out;
  };

  std::string out = table("Relative difference of the solution quality", " Diff%",
                          [](const SummaryCell& c) {
                            return c.diff_percent ? fmt::format("{:.2f}%", *c.diff_percent)
                                                  : std::string("n/a");
                          });
  if (options.include_timing) {
    out += "\n";
    out += table("Execution time (minutes:seconds.tenths, median over seeds)", "",
                 [](const SummaryCell& c) { return c.formatted_time; });
  }
  return out;
}

}  // namespace

std::string emit_report(const BenchReport& report, ReportFormat format,
                        const ReportOptions& options) {
  if (report.rows.empty()) {
    throw UsageError("cannot emit a report without rows");
  }
  switch (format) {
    case ReportFormat::kCsv:
      return emit_csv(report, options);
    case ReportFormat::kJson:
      return emit_json(report, options);
    case ReportFormat::kMarkdown:
      return emit_markdown(report, options);
  }
  throw ConfigError("unknown report format");
}

std::vector<BenchRow> rows_from_json(std::string_view text) {
  std::vector<BenchRow> rows;
  try {
    const json doc = json::parse(text);
    for (const json& j : doc.at("rows")) {
      BenchRow r;
      r.instance = j.at("instance").get<std::string>();
      r.solver = parse_solver_id(j.at("solver").get<std::string>());
      r.seed = j.at("seed").get<std::uint64_t>();
      if (!j.at("best_quality").is_null()) {
        r.best_quality = j["best_quality"].get<Cost>();
      }
      if (!j.at("best_known").is_null()) {
        r.best_known = j["best_known"].get<Cost>();
      }
      if (!j.at("diff_percent").is_null()) {
        r.diff_percent = j["diff_percent"].get<double>();
      }
      if (!j.at("error").is_null()) {
        r.error = j["error"].get<std::string>();
      }
      if (j.contains("elapsed_ms")) {
        r.elapsed_ms = j["elapsed_ms"].get<std::int64_t>();
        r.formatted_time = j.at("formatted_time").get<std::string>();
      }
      rows.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw ParseError(fmt::format("malformed json report: {}", e.what()));
  }
  return rows;
}

namespace {

std::string_view solver_color(SolverId s) {
  switch (s) {
    case SolverId::kGa:
      return "#4e79a7";
    case SolverId::kTs:
      return "#f28e2b";
    case SolverId::kSa:
      return "#59a14f";
  }
  return "#888888";
}

// Smallest 1/2/5 x 10^k step giving at most five intervals up to `max_value`.
double tick_step(double max_value) {
  const double raw = max_value / 5.0;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * magnitude >= raw) {
      return m * magnitude;
    }
  }
  return 10.0 * magnitude;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

std::string emit_chart(std::span<const SummaryCell> summary, ChartMetric metric) {
  const Layout layout(summary);
  auto value_of = [metric](const SummaryCell& c) -> std::optional<double> {
    if (c.failures == c.runs) {
      return std::nullopt;
    }
    if (metric == ChartMetric::kDiff) {
      return c.diff_percent ? std::optional(std::max(0.0, *c.diff_percent)) : std::nullopt;
    }
    return static_cast<double>(c.median_elapsed_ms) / 1000.0;
  };

  double max_value = 0.0;
  for (const SummaryCell& c : summary) {
    if (auto v = value_of(c)) {
      max_value = std::max(max_value, *v);
    }
  }
  if (max_value <= 0.0) {
    max_value = 1.0;
  }
  const double step = tick_step(max_value);
  const double axis_max = std::ceil(max_value / step) * step;

  constexpr double kBarWidth = 14.0;
  constexpr double kGroupGap = 18.0;
  constexpr double kLeft = 72.0;
  constexpr double kTop = 48.0;
  constexpr double kPlotHeight = 300.0;
  constexpr double kBottom = 90.0;
  const double group_width = kBarWidth * static_cast<double>(layout.solvers.size());
  const double plot_width =
      static_cast<double>(layout.instances.size()) * (group_width + kGroupGap) + kGroupGap;
  const double width = kLeft + plot_width + 24.0;
  const double height = kTop + kPlotHeight + kBottom;
  const double baseline = kTop + kPlotHeight;

  const std::string_view title = metric == ChartMetric::kDiff
                                     ? "Relative difference to best known (%)"
                                     : "Execution time (s, median over seeds)";

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "viewBox=\"0 0 {:.0f} {:.0f}\" font-family=\"sans-serif\" font-size=\"11\">\n",
      width, height, width, height);
  out += fmt::format("<text x=\"{:.1f}\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
                     width / 2.0, title);

  // Axis, gridlines and tick labels.
  const auto intervals = static_cast<int>(std::lround(axis_max / step));
  for (int k = 0; k <= intervals; ++k) {
    const double tick = step * k;
    const double y = baseline - tick / axis_max * kPlotHeight;
    out += fmt::format(
        "<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"#dddddd\"/>\n", kLeft,
        y, kLeft + plot_width, y);
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:g}</text>\n",
                       kLeft - 6.0, y + 4.0, tick);
  }
  out += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" stroke=\"#000000\"/>\n",
                     kLeft, kTop, baseline);
  out += fmt::format("<line x1=\"{0:.1f}\" y1=\"{2:.1f}\" x2=\"{1:.1f}\" y2=\"{2:.1f}\" stroke=\"#000000\"/>\n",
                     kLeft, kLeft + plot_width, baseline);
  out += fmt::format(
      "<text transform=\"translate(18 {:.1f}) rotate(-90)\" text-anchor=\"middle\">{}</text>\n",
      kTop + kPlotHeight / 2.0, metric == ChartMetric::kDiff ? "diff %" : "time (s)");

  for (std::size_t g = 0; g < layout.instances.size(); ++g) {
    const std::string& inst = layout.instances[g];
    const double group_x = kLeft + kGroupGap + static_cast<double>(g) * (group_width + kGroupGap);
    for (std::size_t b = 0; b < layout.solvers.size(); ++b) {
      const SolverId s = layout.solvers[b];
      const SummaryCell* c = find_cell(summary, inst, s);
      if (c == nullptr) {
        continue;
      }
      const auto v = value_of(*c);
      if (!v) {
        continue;
      }
      const double h = *v / axis_max * kPlotHeight;
      out += fmt::format(
          "<rect class=\"bar\" x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" "
          "fill=\"{}\"><title>{} {}: {:.2f}</title></rect>\n",
          group_x + static_cast<double>(b) * kBarWidth, baseline - h, kBarWidth, h, solver_color(s),
          xml_escape(inst), to_string(s), *v);
    }
    const double label_x = group_x + group_width / 2.0;
    out += fmt::format(
        "<text transform=\"translate({:.1f} {:.1f}) rotate(-45)\" text-anchor=\"end\">{}</text>\n",
        label_x, baseline + 14.0, xml_escape(inst));
  }

  // Legend.
  for (std::size_t b = 0; b < layout.solvers.size(); ++b) {
    const double x = kLeft + 10.0 + static_cast<double>(b) * 60.0;
    out += fmt::format("<circle cx=\"{:.1f}\" cy=\"34\" r=\"5\" fill=\"{}\"/>\n", x,
                       solver_color(layout.solvers[b]));
    out += fmt::format("<text x=\"{:.1f}\" y=\"38\">{}</text>\n", x + 9.0,
                       to_string(layout.solvers[b]));
  }
  out += "</svg>\n";
  return out;
}

}  // namespace qap
