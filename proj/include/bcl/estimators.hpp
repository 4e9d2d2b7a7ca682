#pragma once

#include <optional>
#include <span>

#include "bcl/scores.hpp"

namespace bcl {

/// Weighted contrastive loss  -log( x+ / (x+ + sum_i w_i x_i) ).
///
/// With unit weights this is the biased InfoNCE loss; with only true negatives
/// in the batch it is the supervised one. Summation runs left to right.
double contrastive_loss(const ScoreBatch& batch, const WeightVector& weights);

/// Plain mean of the unlabeled scores.
double theta_biased(std::span<const double> neg_scores);

struct DclOptions {
  /// When set, the estimate is floored at this value. Unset reproduces the
  /// printed estimator, which can go negative.
  std::optional<double> floor;
};

/// Debiased estimate  (sum x_i - N tau+ mean(x+_k)) / (N tau-).
double theta_dcl(std::span<const double> neg_scores, std::span<const double> extra_pos_scores,
                 double tau_pos, const DclOptions& options = {});

/// Importance-weighted mean  (1/N) sum_i w_i x_i.
double theta_bcl(std::span<const double> neg_scores, const WeightVector& weights);

/// Mean of the true-negative scores. Throws UndefinedOracle when there are none.
double theta_sup(std::span<const LabeledScore> scores);

}  // namespace bcl
