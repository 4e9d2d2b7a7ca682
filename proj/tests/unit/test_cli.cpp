#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;  // stdout and stderr interleaved
};

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + BCL_CLI_PATH + std::string(" ") + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) r.out += buf;
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("bcl_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string p(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, SimulateWritesRowsAndSidecar) {
  const auto r = run("simulate --alpha 0.9 --beta 0.5 --tau-pos 0.1 --t 0.5 --m 1000 --n 64 --seed 42 --out " + p("sim.csv"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(line_count(slurp(p("sim.csv"))), 64001u);
  EXPECT_TRUE(fs::exists(p("sim.csv.json")));
}

TEST_F(Cli, AlphaOutOfRangeExitsTwo) {
  const auto r = run("simulate --alpha 0.3 --out " + p("x.csv"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("alpha"), std::string::npos);
  EXPECT_NE(r.out.find("[0.5, 1]"), std::string::npos);
  EXPECT_EQ(line_count(r.out), 1u);
  EXPECT_FALSE(fs::exists(p("x.csv")));
}

TEST_F(Cli, OtherValidationFailures) {
  EXPECT_EQ(run("simulate --tau-pos 1.0").code, 2);
  EXPECT_EQ(run("simulate --m 0").code, 2);
  EXPECT_EQ(run("simulate --gamma 2").code, 2);
  EXPECT_EQ(run("simulate --lo 1 --hi 0").code, 2);
  EXPECT_EQ(run("simulate --no-such-flag").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("weights --scores 1,-2").code, 2);
  EXPECT_EQ(run("lemmas --beta 0.7").code, 2);
  EXPECT_EQ(run("sweep --axis alpha --values 0.2").code, 2);
  EXPECT_EQ(run("weights --scores 1,2 --beta 0.6 --beta-from-classes 4").code, 2);
  const auto r = run("weights --scores 1,2 --tau-pos 0");
  EXPECT_NE(r.out.find("--tau-pos must be in (0, 1)"), std::string::npos) << r.out;
}

TEST_F(Cli, RuntimeFailureExitsOne) {
  EXPECT_EQ(run("train --epochs 1 --init " + p("missing.bin") + " --out " + p("m.csv")).code, 1);
}

TEST_F(Cli, WeightsWorkedExample) {
  const auto r = run("weights --scores 6,4,3,7,5 --alpha 0.9 --beta 0.5 --tau-pos 0.1");
  ASSERT_EQ(r.code, 0) << r.out;
  std::istringstream is(r.out);
  std::string header, first;
  std::getline(is, header);
  std::getline(is, first);
  EXPECT_EQ(header, "score,ecdf,weight");
  const double w = std::stod(first.substr(first.rfind(',') + 1));
  EXPECT_NEAR(w, 0.93789, 1e-5);
}

TEST_F(Cli, BetaFromClasses) {
  const auto a = run("weights --scores 6,4,3,7,5 --beta-from-classes 4");
  const auto b = run("weights --scores 6,4,3,7,5 --beta 0.75");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(Cli, LossDegenerate) {
  const auto r = run("loss --pos 2 --scores 1,1 --alpha 0.5 --beta 0.5");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("0.69314718055994529,0.69314718055994529"), std::string::npos) << r.out;
}

TEST_F(Cli, HelpListsRangesAndDefaults) {
  for (const char* sub : {"simulate", "weights", "loss", "sweep", "lemmas", "bias-curve", "train"}) {
    const auto r = run(std::string(sub) + " --help");
    EXPECT_EQ(r.code, 0) << sub;
    EXPECT_NE(r.out.find("--out"), std::string::npos) << sub;
  }
  const auto s = run("simulate --help");
  for (const char* needle : {"[0.5, 1]", "(0, 1)", "0.9", "0.1", "1000", "64", "42", "--threads", "--config"}) {
    EXPECT_NE(s.out.find(needle), std::string::npos) << needle;
  }
}

TEST_F(Cli, ConfigFileWithFlagOverride) {
  {
    std::ofstream cfg(p("c.json"));
    cfg << R"({"alpha": 0.7, "m": 3, "n": 5, "proposal": {"kind": "normal", "mean": 0.0, "sd": 1.0}})";
  }
  ASSERT_EQ(run("simulate --config " + p("c.json") + " --n 7 --out " + p("s.csv")).code, 0);
  EXPECT_EQ(line_count(slurp(p("s.csv"))), 1u + 3 * 7);
  const auto side = slurp(p("s.csv.json"));
  EXPECT_NE(side.find("\"alpha\": 0.7"), std::string::npos);
  EXPECT_NE(side.find("\"normal\""), std::string::npos);
  // a sidecar is itself a valid config
  ASSERT_EQ(run("simulate --config " + p("s.csv.json") + " --out " + p("t.csv")).code, 0);
  EXPECT_EQ(slurp(p("s.csv")), slurp(p("t.csv")));
  EXPECT_EQ(run("simulate --config " + p("nope.json")).code, 2);
}

TEST_F(Cli, OutputDirFromEnvironment) {
  const auto r = run("bias-curve --points 11", "BCL_OUTPUT_DIR=" + dir_.string());
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(line_count(slurp(p("bias_curve.csv"))), 12u);
}

TEST_F(Cli, ByteDeterministicAcrossThreadCounts) {
  for (const std::string sub : {"simulate --m 50 --n 32", "sweep --axis n --values 16,64 --m 100 --reps 2 --format json"}) {
    ASSERT_EQ(run(sub + " --threads 1 --out " + p("a")).code, 0);
    ASSERT_EQ(run(sub + " --threads 4 --out " + p("b")).code, 0);
    EXPECT_EQ(slurp(p("a")), slurp(p("b"))) << sub;
  }
}

TEST_F(Cli, TrainWritesMetricsAndCheckpoint) {
  const auto r = run("train --epochs 3 --out " + p("m.csv") + " --checkpoint " + p("w.bin"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(line_count(slurp(p("m.csv"))), 4u);
  EXPECT_TRUE(fs::exists(p("w.bin")));
  ASSERT_EQ(run("train --epochs 1 --init " + p("w.bin") + " --out " + p("m2.csv")).code, 0);
}

TEST_F(Cli, LemmasAndBiasCurve) {
  const auto r = run("lemmas --m 100 --format csv --out " + p("l.csv"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(slurp(p("l.csv")).starts_with("check,passed,statistic,threshold\n"));
  const auto b = run("bias-curve --xmin 0 --xmax 20 --points 21 --out " + p("b.csv"));
  ASSERT_EQ(b.code, 0) << b.out;
  EXPECT_NE(slurp(p("b.csv")).find("\n10,,1\n"), std::string::npos);
}
