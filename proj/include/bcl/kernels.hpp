#pragma once

#include <cstddef>
#include <span>

#include "bcl/weights.hpp"

namespace bcl {

/// Row-major B x N view of per-anchor unlabeled scores.
struct ScoreMatrixView {
  std::span<const double> data;
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::span<const double> row(std::size_t r) const { return data.subspan(r * cols, cols); }
};

// Batched weights and losses over contiguous arrays. The plain versions run
// rows in parallel (OpenMP); the _serial versions are the reference the tests
// compare against. Both produce bit-identical output for any thread count.

void weight_rows(const ScoreMatrixView& negs, const MixtureParams& params, std::span<double> out,
                 const WeightOptions& options = {});
void weight_rows_serial(const ScoreMatrixView& negs, const MixtureParams& params,
                        std::span<double> out, const WeightOptions& options = {});

/// Per-row weighted contrastive loss with internally computed weights.
void loss_rows(std::span<const double> pos, const ScoreMatrixView& negs,
               const MixtureParams& params, std::span<double> out,
               const WeightOptions& options = {});
void loss_rows_serial(std::span<const double> pos, const ScoreMatrixView& negs,
                      const MixtureParams& params, std::span<double> out,
                      const WeightOptions& options = {});

}  // namespace bcl
