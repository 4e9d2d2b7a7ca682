#pragma once

#include <string>

#include "bcl/rng.hpp"

namespace bcl::sim {

/// Anchor-specific score law phi that the class-conditional densities are built from.
///
/// Normal(mean, sd) has unbounded support. Uniform(a, b) carries a slide
/// amplitude gamma in [0, 1] that moves [a, b] per anchor inside
/// [-1/t^2, 1/t^2].
class ProposalDist {
 public:
  enum class Kind { Normal, Uniform };

  static ProposalDist normal(double mean, double sd);
  static ProposalDist uniform(double a, double b, double gamma = 0.0);

  Kind kind() const { return kind_; }
  double mean() const { return p1_; }  ///< Normal only
  double sd() const { return p2_; }    ///< Normal only
  double lower() const { return p1_; } ///< Uniform only
  double upper() const { return p2_; } ///< Uniform only
  double gamma() const { return gamma_; }

  double pdf(double x) const;
  double cdf(double x) const;
  double sample(CounterRng& rng) const;

  /// Support used for numerical integration: exact for Uniform, mean +- 14 sd for Normal.
  std::pair<double, double> integration_range() const;

  /// Throws ContractViolation if a Uniform interval does not sit inside [-1/t^2, 1/t^2].
  void validate_for_temperature(double t) const;

  /// Per-anchor slide: u ~ U(-1, 1); the interval moves right by u*gamma*(L - b)
  /// when u >= 0 and left by |u|*gamma*(a + L) otherwise, with L = 1/t^2.
  /// Normal proposals and gamma = 0 are returned unchanged (no draw consumed).
  ProposalDist slid(CounterRng& rng, double t) const;

  std::string describe() const;

  bool operator==(const ProposalDist&) const = default;

 private:
  ProposalDist(Kind kind, double p1, double p2, double gamma)
      : kind_(kind), p1_(p1), p2_(p2), gamma_(gamma) {}

  Kind kind_;
  double p1_;
  double p2_;
  double gamma_;
};

}  // namespace bcl::sim
