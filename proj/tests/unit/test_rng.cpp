#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "bcl/parallel.hpp"
#include "bcl/rng.hpp"

using namespace bcl;

TEST(CounterRng, DeterministicPerStream) {
  CounterRng a(42, {1, 2, 3});
  CounterRng b(42, {1, 2, 3});
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
}

TEST(CounterRng, StreamsDiffer) {
  std::set<std::uint64_t> first;
  for (std::uint64_t s = 0; s < 100; ++s) {
    CounterRng r(42, {1, s});
    first.insert(r());
  }
  CounterRng x(43, {1, 0});
  first.insert(x());
  EXPECT_EQ(first.size(), 101u);
  EXPECT_NE(derive_seed(1, {2, 3}), derive_seed(1, {3, 2}));
  EXPECT_EQ(derive_seed(1, {2, 3}), derive_seed(1, {2, 3}));
}

TEST(CounterRng, UniformRanges) {
  CounterRng r(7, {});
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = r.uniform_open();
    ASSERT_GT(v, 0.0);
    ASSERT_LT(v, 1.0);
  }
}

TEST(CounterRng, UniformChiSquare) {
  CounterRng r(8, {});
  constexpr int kBins = 50, kDraws = 200000;
  std::vector<int> counts(kBins);
  for (int i = 0; i < kDraws; ++i) counts[static_cast<int>(r.uniform() * kBins)]++;
  double chi2 = 0;
  const double e = static_cast<double>(kDraws) / kBins;
  for (int c : counts) chi2 += (c - e) * (c - e) / e;
  const boost::math::chi_squared dist(kBins - 1);
  EXPECT_GT(boost::math::cdf(boost::math::complement(dist, chi2)), 1e-3);
}

TEST(CounterRng, NormalMoments) {
  CounterRng r(9, {});
  const int n = 200000;
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double z = r.normal();
    s += z;
    s2 += z * z;
  }
  EXPECT_NEAR(s / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.015);
}

TEST(CounterRng, WorksWithStdAlgorithms) {
  CounterRng r(10, {});
  std::vector<int> v{1, 2, 3, 4, 5};
  std::shuffle(v.begin(), v.end(), r);
  std::sort(v.begin(), v.end());
  EXPECT_EQ(v, (std::vector<int>{1, 2, 3, 4, 5}));
}

TEST(Parallel, ScopedThreadCountRestores) {
  const int before = max_threads();
  {
    ScopedThreadCount s(1);
    EXPECT_EQ(max_threads(), 1);
  }
  EXPECT_EQ(max_threads(), before);
}
