#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qap/bench.hpp"

namespace qap {

enum class ReportFormat { kCsv, kJson, kMarkdown };

/// "csv", "json" or "markdown" (also "md"). Throws ConfigError otherwise.
ReportFormat parse_report_format(std::string_view name);

struct ReportOptions {
  /// When false, elapsed_ms / formatted_time columns and the time table are left out,
  /// which makes reports of iteration-bounded plans reproducible byte for byte.
  bool include_timing = true;
};

/// csv: one line per row under the header
///   instance,solver,seed,best_quality,best_known,diff_percent,elapsed_ms,formatted_time
/// json: {"rows": [...], "summary": [...]} with full-precision diff_percent.
/// markdown: a diff% table and a time table, instances as rows, solvers as columns.
/// Throws UsageError on an empty report.
std::string emit_report(const BenchReport& report, ReportFormat format,
                        const ReportOptions& options = {});

/// Parses the "rows" array of a json report.
std::vector<BenchRow> rows_from_json(std::string_view text);

enum class ChartMetric { kDiff, kTime };

/// Grouped bar chart (one group per instance, one bar per solver) as SVG.
/// Each bar is the only <rect> element kind in the output. Cells without a
/// value (failed runs, unknown best) get no bar.
std::string emit_chart(std::span<const SummaryCell> summary, ChartMetric metric);

}  // namespace qap
