#include "bcl/weights.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "bcl/errors.hpp"

namespace bcl {

namespace {

constexpr double kDegenerateA = 1e-12;
constexpr double kRangeSlack = 1e-12;

void require_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    detail::contract(std::string(what) + " must be in [0, 1], got " + std::to_string(v));
  }
}

// Linear in phi; positive at both ends for valid params, hence on all of [0, 1].
double unlabeled_ratio_denominator(double phi, const MixtureParams& p) {
  const double a = p.alpha();
  return a * p.tau_neg() + (1.0 - a) * p.tau_pos() + (1.0 - 2.0 * a) * phi * (p.tau_neg() - p.tau_pos());
}

}  // namespace

MixtureParams::MixtureParams(double alpha, double beta, double tau_pos)
    : alpha_(alpha), beta_(beta), tau_pos_(tau_pos), tau_neg_(1.0 - tau_pos) {
  if (!(alpha >= 0.5 && alpha <= 1.0)) {
    detail::contract("alpha must be in [0.5, 1], got " + std::to_string(alpha));
  }
  if (!(beta >= 0.5 && beta <= 1.0)) {
    detail::contract("beta must be in [0.5, 1], got " + std::to_string(beta));
  }
  if (!(tau_pos > 0.0 && tau_pos < 1.0)) {
    detail::contract("tau_pos must be in (0, 1), got " + std::to_string(tau_pos));
  }
}

double MixtureParams::normalizer() const {
  return (1.0 - beta_) * alpha_ + beta_ * (1.0 - alpha_);
}

double MixtureParams::quad_a() const { return (1.0 - 2.0 * alpha_) * (tau_neg_ - tau_pos_); }

double MixtureParams::quad_b() const {
  return 2.0 * (alpha_ * tau_neg_ + (1.0 - alpha_) * tau_pos_);
}

double beta_from_classes(int classes) {
  if (classes < 2) detail::contract("beta_from_classes: need C >= 2, got " + std::to_string(classes));
  return 1.0 - 1.0 / static_cast<double>(classes);
}

double cdf_transform(double phi_un, const MixtureParams& params) {
  require_unit_interval(phi_un, "cdf_transform: phi_un");
  if (phi_un == 0.0) return 0.0;
  if (phi_un == 1.0) return 1.0;
  const double a = params.quad_a();
  const double b = params.quad_b();
  double phi;
  if (std::abs(a) < kDegenerateA) {
    phi = phi_un / b;
  } else {
    // (-b + sqrt(b^2 + 4 a u)) / (2a), rationalized to avoid cancellation for small a.
    phi = 2.0 * phi_un / (b + std::sqrt(b * b + 4.0 * a * phi_un));
  }
  if (phi < -kRangeSlack || phi > 1.0 + kRangeSlack || !std::isfinite(phi)) {
    throw NumericalError("cdf_transform: root " + std::to_string(phi) + " left [0, 1]");
  }
  return std::clamp(phi, 0.0, 1.0);
}

double posterior_tn(double phi, const MixtureParams& params) {
  require_unit_interval(phi, "posterior_tn: phi");
  const double denom = unlabeled_ratio_denominator(phi, params);
  if (!(denom > 0.0)) throw NumericalError("posterior_tn: non-positive denominator");
  const double a = params.alpha();
  return (a * params.tau_neg() + (1.0 - 2.0 * a) * phi * params.tau_neg()) / denom;
}

double importance_weight(double phi, const MixtureParams& params) {
  require_unit_interval(phi, "importance_weight: phi");
  // Uninformative encoder and no hardness: target equals the unlabeled law exactly.
  if (params.alpha() == 0.5 && params.beta() == 0.5) return 1.0;
  const double denom = unlabeled_ratio_denominator(phi, params);
  if (!(denom > 0.0)) throw NumericalError("importance_weight: non-positive denominator");
  const double a = params.alpha();
  const double b = params.beta();
  // At alpha = 1 numer = (1-beta)(1-phi) and Z = 1-beta; cancel so beta = 1 stays finite.
  if (a == 1.0) return std::max(0.0, (1.0 - phi) / denom);
  const double numer = (1.0 - b) * a + (b - a) * phi;
  // numer >= 0 exactly; rounding can dip it a hair below zero near phi = 1.
  return std::max(0.0, numer / (params.normalizer() * denom));
}

WeightVector weight_batch(std::span<const double> neg_scores, const Ecdf& ecdf,
                          const MixtureParams& params, PlottingPosition plotting) {
  if (neg_scores.empty()) detail::contract("weight_batch: empty score list");
  std::vector<double> w(neg_scores.size());
  for (std::size_t i = 0; i < neg_scores.size(); ++i) {
    const double phi_un = ecdf.eval(neg_scores[i], plotting);
    w[i] = importance_weight(cdf_transform(phi_un, params), params);
  }
  return WeightVector(std::move(w));
}

WeightVector weight_batch(std::span<const double> neg_scores, const MixtureParams& params,
                          const WeightOptions& options) {
  if (neg_scores.empty()) detail::contract("weight_batch: empty score list");
  return weight_batch(neg_scores, Ecdf::build(neg_scores), params, options.plotting);
}

}  // namespace bcl
