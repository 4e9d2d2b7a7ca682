#pragma once

#include <span>

#include "bcl/ecdf.hpp"
#include "bcl/scores.hpp"

namespace bcl {

/// Encoder AUC alpha, hardness beta and class prior tau+ (tau- = 1 - tau+).
///
/// Construction validates strictly: alpha, beta in [0.5, 1], tau+ in (0, 1).
class MixtureParams {
 public:
  MixtureParams(double alpha, double beta, double tau_pos);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double tau_pos() const { return tau_pos_; }
  double tau_neg() const { return tau_neg_; }

  MixtureParams with_beta(double beta) const { return {alpha_, beta, tau_pos_}; }

  /// Normalizer of the hard-negative target density: (1-beta) alpha + beta (1-alpha).
  double normalizer() const;

  /// Coefficients of Phi_UN = a Phi^2 + b Phi.
  double quad_a() const;
  double quad_b() const;

 private:
  double alpha_;
  double beta_;
  double tau_pos_;
  double tau_neg_;
};

/// Heuristic hardness for C downstream classes: beta = 1 - 1/C.
double beta_from_classes(int classes);

/// Maps the unlabeled CDF value to the anchor-specific proposal CDF by solving
/// a Phi^2 + b Phi = phi_un on [0, 1]. Falls back to phi_un / b when |a| < 1e-12.
double cdf_transform(double phi_un, const MixtureParams& params);

/// P(TN | score) written in terms of the proposal CDF value.
double posterior_tn(double phi, const MixtureParams& params);

/// Density ratio of the normalized hard-true-negative target to the unlabeled density.
double importance_weight(double phi, const MixtureParams& params);

enum class EcdfScope {
  PerAnchor,  ///< one eCDF per row over that row's own N scores
  Pooled,     ///< a single eCDF over every score in the batch
};

struct WeightOptions {
  PlottingPosition plotting = PlottingPosition::Inclusive;
  EcdfScope scope = EcdfScope::PerAnchor;
};

/// eCDF -> CDF transform -> importance weight, for each of one anchor's negatives.
WeightVector weight_batch(std::span<const double> neg_scores, const MixtureParams& params,
                          const WeightOptions& options = {});

/// Same chain against a caller-supplied eCDF (used for pooled scope).
WeightVector weight_batch(std::span<const double> neg_scores, const Ecdf& ecdf,
                          const MixtureParams& params,
                          PlottingPosition plotting = PlottingPosition::Inclusive);

}  // namespace bcl
