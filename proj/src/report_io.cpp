#include "bcl/report_io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "bcl/errors.hpp"
#include "bcl/sim_io.hpp"

namespace bcl::harness {

using nlohmann::json;
using sim::format_double;

namespace {

json array_json(const EstimatorArray& a) {
  json j = json::object();
  for (Estimator e : kEstimators) j[to_string(e)] = a[static_cast<std::size_t>(e)];
  return j;
}

EstimatorArray array_from_json(const json& j) {
  EstimatorArray a{};
  for (Estimator e : kEstimators) {
    const auto& v = j.at(to_string(e));
    a[static_cast<std::size_t>(e)] = v.is_null() ? std::nan("") : v.get<double>();
  }
  return a;
}

template <class Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  writer(out);
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace

ReportFormat parse_format(const std::string& name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  if (name == "long" || name == "long-csv") return ReportFormat::LongCsv;
  detail::contract("format must be csv, json or long; got '" + name + "'");
}

void write_report_csv(const EstimatorReport& report, std::ostream& out) {
  out << "axis,value";
  for (const char* stat : {"mse", "mean"}) {
    for (Estimator e : kEstimators) out << ',' << stat << '_' << to_string(e);
  }
  out << ",bcl_sup_diff_sd,anchors_used,anchors_dropped\n";
  for (const auto& row : report.rows) {
    out << to_string(report.grid.axis) << ',' << format_double(row.axis_value);
    for (double v : row.mse) out << ',' << format_double(v);
    for (double v : row.mean) out << ',' << format_double(v);
    out << ',' << format_double(row.bcl_sup_diff_sd) << ',' << row.anchors_used << ',' << row.anchors_dropped
        << '\n';
  }
}

void write_report_long_csv(const EstimatorReport& report, std::ostream& out) {
  out << "x,series,value\n";
  for (const auto& row : report.rows) {
    for (const char* stat : {"mse", "mean"}) {
      const auto& arr = std::string(stat) == "mse" ? row.mse : row.mean;
      for (Estimator e : kEstimators) {
        out << format_double(row.axis_value) << ',' << stat << '_' << to_string(e) << ','
            << format_double(arr[static_cast<std::size_t>(e)]) << '\n';
      }
    }
  }
}

json to_json(const EstimatorReport& report) {
  const auto& g = report.grid;
  json rows = json::array();
  for (const auto& row : report.rows) {
    json reps = json::array();
    for (const auto& r : row.rep_mse) reps.push_back(array_json(r));
    json r = {{"value", row.axis_value},
              {"mse", array_json(row.mse)},
              {"mean", array_json(row.mean)},
              {"rep_mse", reps},
              {"bcl_sup_diff_sd", row.bcl_sup_diff_sd},
              {"anchors_used", row.anchors_used},
              {"anchors_dropped", row.anchors_dropped}};
    if (!row.anchors.empty()) {
      json anchors = json::array();
      for (const auto& a : row.anchors) anchors.push_back(array_json(a));
      r["anchors"] = anchors;
    }
    rows.push_back(r);
  }
  return {{"version", BCL_VERSION},
          {"kind", report.kind},
          {"grid",
           {{"axis", to_string(g.axis)},
            {"values", g.values},
            {"repetitions", g.repetitions},
            {"seed", g.seed},
            {"dcl_positives", g.dcl_positives},
            {"retain_anchors", g.retain_anchors},
            {"base", sim::to_json(g.base)}}},
          {"rows", rows}};
}

EstimatorReport report_from_json(const json& j) {
  EstimatorReport report;
  report.kind = j.at("kind").get<std::string>();
  const auto& g = j.at("grid");
  report.grid.axis = parse_axis(g.at("axis").get<std::string>());
  report.grid.values = g.at("values").get<std::vector<double>>();
  report.grid.repetitions = g.at("repetitions").get<std::size_t>();
  report.grid.seed = g.at("seed").get<std::uint64_t>();
  report.grid.dcl_positives = g.at("dcl_positives").get<std::size_t>();
  report.grid.retain_anchors = g.value("retain_anchors", false);
  report.grid.base = sim::config_from_json(g.at("base"));
  for (const auto& r : j.at("rows")) {
    GridPointResult row;
    row.axis_value = r.at("value").get<double>();
    row.mse = array_from_json(r.at("mse"));
    row.mean = array_from_json(r.at("mean"));
    for (const auto& rep : r.at("rep_mse")) row.rep_mse.push_back(array_from_json(rep));
    row.bcl_sup_diff_sd = r.at("bcl_sup_diff_sd").get<double>();
    row.anchors_used = r.at("anchors_used").get<std::size_t>();
    row.anchors_dropped = r.at("anchors_dropped").get<std::size_t>();
    if (r.contains("anchors")) {
      for (const auto& a : r.at("anchors")) row.anchors.push_back(array_from_json(a));
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

json to_json(const LemmaReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    json series = json::array();
    for (const auto& [x, y] : c.series) series.push_back({x, y});
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"statistic", c.statistic},
                      {"threshold", c.threshold},
                      {"detail", c.detail},
                      {"series", series}});
  }
  return {{"version", BCL_VERSION},
          {"kind", "lemma_suite"},
          {"config", sim::to_json(report.config)},
          {"all_passed", report.all_passed()},
          {"checks", checks}};
}

void write_lemma_csv(const LemmaReport& report, std::ostream& out) {
  out << "check,passed,statistic,threshold\n";
  for (const auto& c : report.checks) {
    out << c.name << ',' << (c.passed ? "true" : "false") << ',' << format_double(c.statistic) << ','
        << format_double(c.threshold) << '\n';
  }
}

void write_bias_curve_csv(const BiasGapCurve& curve, std::ostream& out) {
  out << "xhat,ratio,at_pole\n";
  for (const auto& p : curve.points) {
    out << format_double(p.xhat) << ',' << (p.at_pole ? std::string() : format_double(p.ratio)) << ','
        << (p.at_pole ? 1 : 0) << '\n';
  }
}

void export_report(const EstimatorReport& report, ReportFormat format, const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& out) {
    switch (format) {
      case ReportFormat::Csv: write_report_csv(report, out); break;
      case ReportFormat::LongCsv: write_report_long_csv(report, out); break;
      case ReportFormat::Json: out << to_json(report).dump(2) << '\n'; break;
    }
  });
}

void export_report(const LemmaReport& report, ReportFormat format, const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& out) {
    if (format == ReportFormat::Json) {
      out << to_json(report).dump(2) << '\n';
    } else {
      write_lemma_csv(report, out);
    }
  });
}

EstimatorReport read_report_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  try {
    return report_from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw std::runtime_error("malformed report '" + path.string() + "': " + e.what());
  }
}

}  // namespace bcl::harness
