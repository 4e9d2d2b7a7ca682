#include "bcl/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "bcl/errors.hpp"
#include "bcl/estimators.hpp"

namespace bcl {

namespace {

void check_shapes(const ScoreMatrixView& negs, std::size_t out_size, const char* what) {
  if (negs.rows == 0 || negs.cols == 0) detail::contract(std::string(what) + ": empty matrix");
  if (negs.data.size() != negs.rows * negs.cols) {
    detail::contract(std::string(what) + ": data length " + std::to_string(negs.data.size()) +
                     " != rows*cols " + std::to_string(negs.rows * negs.cols));
  }
  if (out_size != negs.rows * negs.cols && out_size != negs.rows) {
    detail::contract(std::string(what) + ": output has wrong length");
  }
  for (double v : negs.data) {
    if (!std::isfinite(v)) detail::contract(std::string(what) + ": non-finite score");
  }
}

std::optional<Ecdf> pooled_ecdf(const ScoreMatrixView& negs, const WeightOptions& options) {
  if (options.scope != EcdfScope::Pooled) return std::nullopt;
  return Ecdf::build(negs.data);
}

void weight_one_row(const ScoreMatrixView& negs, std::size_t r, const MixtureParams& params,
                    const std::optional<Ecdf>& pooled, const WeightOptions& options,
                    std::span<double> out) {
  const auto row = negs.row(r);
  const WeightVector w = pooled ? weight_batch(row, *pooled, params, options.plotting)
                                : weight_batch(row, params, options);
  std::copy(w.values().begin(), w.values().end(), out.begin() + static_cast<std::ptrdiff_t>(r * negs.cols));
}

double loss_one_row(double pos, const ScoreMatrixView& negs, std::size_t r,
                    const MixtureParams& params, const std::optional<Ecdf>& pooled,
                    const WeightOptions& options) {
  const auto row = negs.row(r);
  const WeightVector w = pooled ? weight_batch(row, *pooled, params, options.plotting)
                                : weight_batch(row, params, options);
  return contrastive_loss(ScoreBatch(pos, {row.begin(), row.end()}), w);
}

// Exceptions must not escape an OpenMP region; the first one is rethrown after it.
template <class Body>
void parallel_rows(std::size_t rows, Body&& body) {
  std::exception_ptr failure;
  const auto n = static_cast<long long>(rows);
#pragma omp parallel for schedule(static)
  for (long long r = 0; r < n; ++r) {
    try {
      body(static_cast<std::size_t>(r));
    } catch (...) {
#pragma omp critical(bcl_kernel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

void weight_rows(const ScoreMatrixView& negs, const MixtureParams& params, std::span<double> out,
                 const WeightOptions& options) {
  check_shapes(negs, out.size(), "weight_rows");
  if (out.size() != negs.rows * negs.cols) detail::contract("weight_rows: output must be rows*cols");
  const auto pooled = pooled_ecdf(negs, options);
  parallel_rows(negs.rows, [&](std::size_t r) { weight_one_row(negs, r, params, pooled, options, out); });
}

void weight_rows_serial(const ScoreMatrixView& negs, const MixtureParams& params,
                        std::span<double> out, const WeightOptions& options) {
  check_shapes(negs, out.size(), "weight_rows_serial");
  if (out.size() != negs.rows * negs.cols) detail::contract("weight_rows_serial: output must be rows*cols");
  const auto pooled = pooled_ecdf(negs, options);
  for (std::size_t r = 0; r < negs.rows; ++r) weight_one_row(negs, r, params, pooled, options, out);
}

void loss_rows(std::span<const double> pos, const ScoreMatrixView& negs,
               const MixtureParams& params, std::span<double> out, const WeightOptions& options) {
  check_shapes(negs, out.size(), "loss_rows");
  if (pos.size() != negs.rows || out.size() != negs.rows) {
    detail::contract("loss_rows: pos and out must have one entry per row");
  }
  const auto pooled = pooled_ecdf(negs, options);
  parallel_rows(negs.rows, [&](std::size_t r) { out[r] = loss_one_row(pos[r], negs, r, params, pooled, options); });
}

void loss_rows_serial(std::span<const double> pos, const ScoreMatrixView& negs,
                      const MixtureParams& params, std::span<double> out,
                      const WeightOptions& options) {
  check_shapes(negs, out.size(), "loss_rows_serial");
  if (pos.size() != negs.rows || out.size() != negs.rows) {
    detail::contract("loss_rows_serial: pos and out must have one entry per row");
  }
  const auto pooled = pooled_ecdf(negs, options);
  for (std::size_t r = 0; r < negs.rows; ++r) out[r] = loss_one_row(pos[r], negs, r, params, pooled, options);
}

}  // namespace bcl
