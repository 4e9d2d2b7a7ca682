#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "bcl/errors.hpp"
#include "bcl/report_io.hpp"

using namespace bcl;
using namespace bcl::harness;
namespace fs = std::filesystem;

namespace {

EstimatorReport sample_report() {
  SweepGrid g;
  g.axis = SweepAxis::Alpha;
  g.values = {0.7, 0.9};
  g.base.anchors = 50;
  g.repetitions = 2;
  g.retain_anchors = true;
  return run_mse_sweep(g);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST(ReportIo, EmptyReportIsHeaderOnly) {
  EstimatorReport r;
  std::ostringstream os;
  write_report_csv(r, os);
  EXPECT_EQ(os.str(),
            "axis,value,mse_biased,mse_dcl,mse_bcl,mse_sup,mean_biased,mean_dcl,mean_bcl,mean_sup,bcl_sup_diff_sd,"
            "anchors_used,anchors_dropped\n");
}

TEST(ReportIo, ExportTwiceByteIdentical) {
  const auto r = sample_report();
  const fs::path dir = fs::temp_directory_path() / "bcl_report_io_test";
  fs::create_directories(dir);
  for (auto f : {ReportFormat::Csv, ReportFormat::Json, ReportFormat::LongCsv}) {
    export_report(r, f, dir / "a");
    export_report(r, f, dir / "b");
    EXPECT_EQ(slurp(dir / "a"), slurp(dir / "b"));
  }
  fs::remove_all(dir);
}

TEST(ReportIo, JsonRoundTrip) {
  const auto r = sample_report();
  const fs::path p = fs::temp_directory_path() / "bcl_report_rt.json";
  export_report(r, ReportFormat::Json, p);
  const auto back = read_report_json(p);
  fs::remove(p);
  EXPECT_EQ(back.kind, r.kind);
  EXPECT_EQ(back.grid.values, r.grid.values);
  EXPECT_EQ(back.grid.repetitions, r.grid.repetitions);
  EXPECT_EQ(back.grid.base.anchors, r.grid.base.anchors);
  ASSERT_EQ(back.rows.size(), r.rows.size());
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    EXPECT_EQ(back.rows[i].mse, r.rows[i].mse);
    EXPECT_EQ(back.rows[i].mean, r.rows[i].mean);
    EXPECT_EQ(back.rows[i].rep_mse, r.rows[i].rep_mse);
    EXPECT_EQ(back.rows[i].anchors, r.rows[i].anchors);
    EXPECT_EQ(back.rows[i].anchors_used, r.rows[i].anchors_used);
  }
  EXPECT_EQ(to_json(back).dump(), to_json(r).dump());
}

TEST(ReportIo, JsonCarriesVersionAndConfig) {
  const auto j = to_json(sample_report());
  EXPECT_EQ(j.at("version"), BCL_VERSION);
  EXPECT_EQ(j.at("grid").at("base").at("alpha"), 0.9);
}

TEST(ReportIo, LongFormat) {
  const auto r = sample_report();
  std::ostringstream os;
  write_report_long_csv(r, os);
  const std::string s = os.str();
  EXPECT_TRUE(s.starts_with("x,series,value\n"));
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 1 + 2 * 8);
}

TEST(ReportIo, ErrorsCarryPath) {
  try {
    export_report(sample_report(), ReportFormat::Csv, "/nonexistent_dir_xyz/r.csv");
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent_dir_xyz/r.csv"), std::string::npos);
  }
  EXPECT_THROW(read_report_json("/nonexistent_dir_xyz/r.json"), std::runtime_error);
  EXPECT_THROW(parse_format("xml"), ContractViolation);
}

TEST(ReportIo, LemmaAndBiasCurveCsv) {
  LemmaReport lr;
  lr.checks.push_back({"x", true, 0.5, 1.0, "", {}});
  std::ostringstream a;
  write_lemma_csv(lr, a);
  EXPECT_EQ(a.str(), "check,passed,statistic,threshold\nx,true,0.5,1\n");
  const std::vector<double> g{5, 10};
  std::ostringstream b;
  write_bias_curve_csv(bias_gap_curve(1, 0.1, g), b);
  EXPECT_EQ(b.str(), "xhat,ratio,at_pole\n5,9,0\n10,,1\n");
}
