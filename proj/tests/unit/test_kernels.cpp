#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "bcl/errors.hpp"
#include "bcl/estimators.hpp"
#include "bcl/kernels.hpp"
#include "bcl/parallel.hpp"
#include "bcl/rng.hpp"

using namespace bcl;

namespace {

std::vector<double> random_scores(std::size_t n, std::uint64_t seed) {
  CounterRng r(seed, {});
  std::vector<double> v(n);
  for (auto& x : v) x = std::exp(2.0 * r.normal());
  return v;
}

}  // namespace

TEST(Kernels, WeightRowsMatchPerRowScalarPath) {
  const std::size_t rows = 37, cols = 19;
  const auto data = random_scores(rows * cols, 1);
  const ScoreMatrixView view{data, rows, cols};
  const MixtureParams p(0.85, 0.6, 0.2);
  std::vector<double> out(rows * cols);
  weight_rows(view, p, out);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto w = weight_batch(view.row(r), p);
    for (std::size_t c = 0; c < cols; ++c) EXPECT_EQ(out[r * cols + c], w[c]);
  }
}

TEST(Kernels, LossRowsMatchScalarPath) {
  const std::size_t rows = 50, cols = 8;
  const auto data = random_scores(rows * cols, 2);
  const auto pos = random_scores(rows, 3);
  const ScoreMatrixView view{data, rows, cols};
  const MixtureParams p(0.9, 0.5, 0.1);
  std::vector<double> out(rows);
  loss_rows(pos, view, p, out);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto row = view.row(r);
    const ScoreBatch b(pos[r], std::vector<double>(row.begin(), row.end()));
    EXPECT_EQ(out[r], contrastive_loss(b, weight_batch(row, p)));
  }
}

TEST(Kernels, ParallelEqualsSerialForAnyThreadCount) {
  const std::size_t rows = 301, cols = 33;
  const auto data = random_scores(rows * cols, 4);
  const auto pos = random_scores(rows, 5);
  const ScoreMatrixView view{data, rows, cols};
  const MixtureParams p(0.7, 0.9, 0.3);
  for (auto scope : {EcdfScope::PerAnchor, EcdfScope::Pooled}) {
    const WeightOptions o{PlottingPosition::Inclusive, scope};
    std::vector<double> ws(rows * cols), ls(rows);
    weight_rows_serial(view, p, ws, o);
    loss_rows_serial(pos, view, p, ls, o);
    for (int threads : {1, 2, 3, 8}) {
      ScopedThreadCount t(threads);
      std::vector<double> wp(rows * cols), lp(rows);
      weight_rows(view, p, wp, o);
      loss_rows(pos, view, p, lp, o);
      EXPECT_EQ(wp, ws);
      EXPECT_EQ(lp, ls);
    }
  }
}

TEST(Kernels, PooledScopeUsesOneEcdf) {
  const std::vector<double> data{1, 2, 3, 4};
  const ScoreMatrixView view{data, 2, 2};
  const MixtureParams p(0.9, 0.5, 0.1);
  std::vector<double> out(4);
  weight_rows(view, p, out, {PlottingPosition::Inclusive, EcdfScope::Pooled});
  EXPECT_EQ(out[0], importance_weight(cdf_transform(0.25, p), p));
  EXPECT_EQ(out[3], importance_weight(cdf_transform(1.0, p), p));
}

TEST(Kernels, ConstantAndIdenticalRows) {
  const std::vector<double> data{2, 2, 2, 5, 1, 3, 5, 1, 3};
  const ScoreMatrixView view{data, 3, 3};
  const std::vector<double> pos{1.0, 2.0, 2.0};
  const MixtureParams p(0.9, 0.5, 0.1);
  std::vector<double> w(9), l(3);
  weight_rows(view, p, w);
  loss_rows(pos, view, p, l);
  EXPECT_EQ(w[0], w[1]);
  EXPECT_EQ(w[1], w[2]);
  EXPECT_EQ(l[1], l[2]);
}

TEST(Kernels, DegenerateAllOnes) {
  const auto data = random_scores(40, 6);
  std::vector<double> out(40);
  weight_rows({data, 4, 10}, MixtureParams(0.5, 0.5, 0.2), out);
  for (double v : out) EXPECT_EQ(v, 1.0);
}

TEST(Kernels, ShapeAndValueErrors) {
  const std::vector<double> data{1, 2, 3, 4};
  const MixtureParams p(0.9, 0.5, 0.1);
  std::vector<double> small(3);
  EXPECT_THROW(weight_rows({data, 2, 2}, p, small), ContractViolation);
  EXPECT_THROW(weight_rows_serial({data, 2, 2}, p, small), ContractViolation);
  std::vector<double> l(2);
  EXPECT_THROW(loss_rows(std::vector<double>{1.0}, {data, 2, 2}, p, l), ContractViolation);
  const std::vector<double> bad{1, NAN, 3, 4};
  std::vector<double> out(4);
  EXPECT_THROW(weight_rows({bad, 2, 2}, p, out), ContractViolation);
}

TEST(Kernels, InputsNotMutated) {
  auto data = random_scores(60, 7);
  const auto copy = data;
  std::vector<double> out(60);
  weight_rows({data, 6, 10}, MixtureParams(0.8, 0.5, 0.1), out);
  EXPECT_EQ(data, copy);
}
