#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bcl/proposal.hpp"
#include "bcl/rng.hpp"
#include "bcl/scores.hpp"
#include "bcl/weights.hpp"

namespace bcl::sim {

/// Generator settings. Defaults are the baseline numerical-experiment setting:
/// alpha=0.9, beta=0.5, gamma=0.1, tau+=0.1, t=0.5, M=1000, N=64, U(-0.5, 0.5).
struct SimConfig {
  MixtureParams mixture{0.9, 0.5, 0.1};
  ProposalDist proposal = ProposalDist::uniform(-0.5, 0.5, 0.1);
  double t = 0.5;
  std::size_t anchors = 1000;
  std::size_t negatives = 64;
  std::uint64_t seed = 42;

  /// Preset mirroring the empirical-distribution figure: N(0,1), t=2, M=1, N=20000.
  static SimConfig distribution_preset();

  void validate() const;
};

enum class Population { TrueNegative, FalseNegative, Unlabeled };

/// Probability that a proposal draw with proposal-CDF value `phi` is accepted
/// for the TN (resp. FN) class-conditional law.
double acceptance_probability(Label label, double phi, double alpha);

inline constexpr std::size_t kMaxProposals = 1'000'000;

/// One draw from phi_TN or phi_FN by rejection against `proposal`.
/// Throws SamplingFailure after `max_proposals` rejections.
double sample_conditional(Label label, const ProposalDist& proposal, double alpha,
                          CounterRng& rng, std::size_t max_proposals = kMaxProposals);

struct SimSample {
  double raw = 0.0;     ///< score drawn from the class-conditional law
  double mapped = 1.0;  ///< exp(raw / t)
  Label label = Label::TrueNegative;
};

struct AnchorDraw {
  ProposalDist proposal;
  std::vector<SimSample> samples;

  std::vector<double> mapped_scores() const;
  std::vector<LabeledScore> labeled_scores() const;
  std::size_t true_negatives() const;
};

struct SimBatch {
  SimConfig config;
  std::vector<AnchorDraw> anchors;

  std::size_t total_samples() const;
};

/// The anchor's (possibly slid) proposal. Deterministic in (seed, anchor).
ProposalDist anchor_proposal(const SimConfig& config, std::size_t anchor);

/// One labeled sample: class by the prior, score by rejection, then exp(x/t).
SimSample draw_sample(const SimConfig& config, const ProposalDist& proposal, std::size_t anchor,
                      std::size_t index);

AnchorDraw generate_anchor(const SimConfig& config, std::size_t anchor);

/// M anchors x N labeled samples. Anchors run in parallel; output is identical
/// to generate_batch_serial for every thread count.
SimBatch generate_batch(const SimConfig& config);
SimBatch generate_batch_serial(const SimConfig& config);

/// `count` mapped scores drawn from the anchor's FN law on a stream disjoint
/// from the unlabeled samples (positives for the loss and the DCL estimator).
std::vector<double> draw_positive_scores(const SimConfig& config, const ProposalDist& proposal,
                                         std::size_t anchor, std::size_t count);

/// Closed-form class-conditional or unlabeled density at raw score x.
double mixture_density(Population pop, double x, double alpha, double tau_pos,
                       const ProposalDist& proposal);

/// Closed-form CDF companion of mixture_density (a quadratic in the proposal CDF).
double mixture_cdf(Population pop, double x, double alpha, double tau_pos,
                   const ProposalDist& proposal);

/// E[exp(x/t)] under the population's law, by adaptive Gauss-Kronrod quadrature.
double population_mapped_mean(Population pop, double alpha, double tau_pos,
                              const ProposalDist& proposal, double t);

/// Fraction of (pos, neg) pairs with pos >= neg; ties count as successes.
double estimate_alpha_auc(std::span<const double> pos_scores, std::span<const double> neg_scores);

/// Expected AUC of independent FN vs TN draws under the mixture model: (4 alpha + 1) / 6.
double mixture_pair_auc(double alpha);

}  // namespace bcl::sim
