#pragma once

#include <filesystem>
#include <string>

#include "copool/benchmark.hpp"

namespace copool {

/// One JSON document: settings, one block per method (per-game aggregates,
/// metrics, skipped games, warnings) and the pairwise test list.
std::string report_to_json(const EvaluationReport& report);
EvaluationReport report_from_json(const std::string& text);

/// One row per (game, method): game_id,method,p_1..p_z,absolute_error.
std::string report_to_csv(const EvaluationReport& report);
/// Per-method metrics followed by the pairwise tests.
std::string report_summary_csv(const EvaluationReport& report);

/// Path of the summary file written next to a CSV report.
std::filesystem::path summary_path_for(const std::filesystem::path& report_path);

/// Writes the report; CSV also writes summary_path_for(path). Throws io_error.
void emit_report(const EvaluationReport& report, ReportFormat format, const std::filesystem::path& path);

}  // namespace copool
