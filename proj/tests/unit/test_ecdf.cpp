#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "bcl/ecdf.hpp"
#include "bcl/errors.hpp"
#include "bcl/rng.hpp"

using namespace bcl;

TEST(Ecdf, WorkedExample) {
  const std::vector<double> s{6, 4, 3, 7, 5};
  const auto e = Ecdf::build(s);
  EXPECT_EQ(e.eval(6), 0.8);
  EXPECT_EQ(e.eval(7), 1.0);
  EXPECT_EQ(e.eval(3), 0.2);
  EXPECT_EQ(e.eval(2.9), 0.0);
}

TEST(Ecdf, TiesKeepMultiplicity) {
  const std::vector<double> s{1, 2, 2, 2, 3};
  const auto e = Ecdf::build(s);
  EXPECT_EQ(e.eval(2), 0.8);
  EXPECT_EQ(e.eval(1.5), 0.2);
}

TEST(Ecdf, MidRank) {
  const std::vector<double> s{6, 4, 3, 7, 5};
  const auto e = Ecdf::build(s);
  EXPECT_DOUBLE_EQ(e.eval(6, PlottingPosition::MidRank), 0.7);
  EXPECT_EQ(e.eval(1, PlottingPosition::MidRank), 0.0);
}

TEST(Ecdf, InputNotMutatedAndSortedCopy) {
  const std::vector<double> s{3, 1, 2};
  const auto copy = s;
  const auto e = Ecdf::build(s);
  EXPECT_EQ(s, copy);
  EXPECT_TRUE(std::is_sorted(e.values().begin(), e.values().end()));
  EXPECT_EQ(e.size(), 3u);
}

TEST(Ecdf, RejectsBadInput) {
  EXPECT_THROW(Ecdf::build(std::vector<double>{}), ContractViolation);
  EXPECT_THROW(Ecdf::build(std::vector<double>{1.0, std::nan("")}), ContractViolation);
  const auto e = Ecdf::build(std::vector<double>{1.0});
  EXPECT_THROW(e.eval(std::nan("")), ContractViolation);
}

// Brute-force count against the binary-search implementation.
TEST(Ecdf, MatchesLinearScan) {
  CounterRng rng(3, {});
  std::vector<double> s(257);
  for (auto& v : s) v = std::floor(rng.uniform() * 40.0);  // plenty of ties
  const auto e = Ecdf::build(s);
  for (int q = -1; q <= 41; ++q) {
    const auto c = std::count_if(s.begin(), s.end(), [&](double v) { return v <= q; });
    EXPECT_EQ(e.eval(q), static_cast<double>(c) / static_cast<double>(s.size()));
  }
}

TEST(Ecdf, MonotoneAndBounded) {
  CounterRng rng(4, {});
  std::vector<double> s(100);
  for (auto& v : s) v = rng.normal();
  const auto e = Ecdf::build(s);
  double prev = 0.0;
  for (double q = -5; q <= 5; q += 0.01) {
    const double v = e.eval(q);
    EXPECT_GE(v, prev);
    EXPECT_LE(v, 1.0);
    prev = v;
  }
}
