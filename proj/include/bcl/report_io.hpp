#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "bcl/harness.hpp"

namespace bcl::harness {

enum class ReportFormat { Csv, Json, LongCsv };
ReportFormat parse_format(const std::string& name);

/// Wide CSV, one row per grid point, 17 significant digits. An empty report
/// yields the header line only.
void write_report_csv(const EstimatorReport& report, std::ostream& out);
/// Plot-ready long format: x,series,value.
void write_report_long_csv(const EstimatorReport& report, std::ostream& out);

nlohmann::json to_json(const EstimatorReport& report);
EstimatorReport report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const LemmaReport& report);
void write_lemma_csv(const LemmaReport& report, std::ostream& out);

void write_bias_curve_csv(const BiasGapCurve& curve, std::ostream& out);

/// Writes `report` to `path` in `format`. I/O failures carry the path.
void export_report(const EstimatorReport& report, ReportFormat format, const std::filesystem::path& path);
void export_report(const LemmaReport& report, ReportFormat format, const std::filesystem::path& path);

EstimatorReport read_report_json(const std::filesystem::path& path);

}  // namespace bcl::harness
