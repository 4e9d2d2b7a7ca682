#include "bcl/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bcl/errors.hpp"

namespace bcl {

const char* to_string(Label label) {
  return label == Label::TrueNegative ? "TN" : "FN";
}

namespace {

void require_positive_scores(std::span<const double> xs, const char* what) {
  for (double x : xs) {
    if (!std::isfinite(x) || x <= 0.0) {
      detail::contract(std::string(what) + ": scores must be finite and > 0, got " +
                       std::to_string(x));
    }
  }
}

double left_sum(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s;
}

}  // namespace

ScoreBatch::ScoreBatch(double pos_score, std::vector<double> neg_scores,
                       std::optional<std::vector<double>> extra_pos_scores)
    : pos_score_(pos_score),
      neg_scores_(std::move(neg_scores)),
      extra_pos_scores_(std::move(extra_pos_scores)) {
  if (!std::isfinite(pos_score_) || pos_score_ <= 0.0) {
    detail::contract("ScoreBatch: positive score must be finite and > 0");
  }
  if (neg_scores_.empty()) detail::contract("ScoreBatch: need at least one negative score");
  require_positive_scores(neg_scores_, "ScoreBatch");
  if (extra_pos_scores_) {
    if (extra_pos_scores_->empty()) {
      detail::contract("ScoreBatch: extra positive scores present but empty");
    }
    require_positive_scores(*extra_pos_scores_, "ScoreBatch");
  }
}

WeightVector::WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) {
      detail::contract("WeightVector: weights must be finite and >= 0, got " + std::to_string(w));
    }
  }
}

WeightVector WeightVector::ones(std::size_t n) { return WeightVector(std::vector<double>(n, 1.0)); }

double contrastive_loss(const ScoreBatch& batch, const WeightVector& weights) {
  const auto negs = batch.neg_scores();
  if (weights.size() != negs.size()) {
    detail::contract("contrastive_loss: " + std::to_string(weights.size()) + " weights for " +
                     std::to_string(negs.size()) + " negatives");
  }
  double weighted = 0.0;
  for (std::size_t i = 0; i < negs.size(); ++i) weighted += weights[i] * negs[i];
  if (weighted == 0.0) return 0.0;
  // -log(p / (p + s)) == log1p(s / p)
  return std::log1p(weighted / batch.pos_score());
}

double theta_biased(std::span<const double> neg_scores) {
  if (neg_scores.empty()) detail::contract("theta_biased: empty score list");
  return left_sum(neg_scores) / static_cast<double>(neg_scores.size());
}

double theta_dcl(std::span<const double> neg_scores, std::span<const double> extra_pos_scores,
                 double tau_pos, const DclOptions& options) {
  if (neg_scores.empty()) detail::contract("theta_dcl: empty negative list");
  if (extra_pos_scores.empty()) detail::contract("theta_dcl: need K >= 1 positive scores");
  if (!(tau_pos >= 0.0 && tau_pos < 1.0)) {
    detail::contract("theta_dcl: tau_pos must be in [0, 1), got " + std::to_string(tau_pos));
  }
  const double n = static_cast<double>(neg_scores.size());
  const double pos_mean = left_sum(extra_pos_scores) / static_cast<double>(extra_pos_scores.size());
  const double tau_neg = 1.0 - tau_pos;
  double estimate = (left_sum(neg_scores) - n * tau_pos * pos_mean) / (n * tau_neg);
  if (options.floor) estimate = std::max(estimate, *options.floor);
  return estimate;
}

double theta_bcl(std::span<const double> neg_scores, const WeightVector& weights) {
  if (neg_scores.empty()) detail::contract("theta_bcl: empty score list");
  if (weights.size() != neg_scores.size()) {
    detail::contract("theta_bcl: " + std::to_string(weights.size()) + " weights for " +
                     std::to_string(neg_scores.size()) + " negatives");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < neg_scores.size(); ++i) s += weights[i] * neg_scores[i];
  return s / static_cast<double>(neg_scores.size());
}

double theta_sup(std::span<const LabeledScore> scores) {
  double s = 0.0;
  std::size_t count = 0;
  for (const auto& sc : scores) {
    if (sc.label != Label::TrueNegative) continue;
    s += sc.value;
    ++count;
  }
  if (count == 0) throw UndefinedOracle("theta_sup: no true-negative samples, oracle undefined");
  return s / static_cast<double>(count);
}

}  // namespace bcl
