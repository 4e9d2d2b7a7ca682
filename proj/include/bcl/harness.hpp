#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bcl/simulation.hpp"

namespace bcl::harness {

enum class Estimator { Biased, Dcl, Bcl, Sup };
inline constexpr std::array<Estimator, 4> kEstimators{Estimator::Biased, Estimator::Dcl,
                                                      Estimator::Bcl, Estimator::Sup};
const char* to_string(Estimator e);

/// Per-estimator values, indexed by static_cast<size_t>(Estimator).
using EstimatorArray = std::array<double, 4>;

enum class SweepAxis { Alpha, N, TauPos, Gamma, T, M };
const char* to_string(SweepAxis axis);
SweepAxis parse_axis(const std::string& name);

/// One-dimensional sweep over a SimConfig parameter.
struct SweepGrid {
  SweepAxis axis = SweepAxis::Alpha;
  std::vector<double> values;
  sim::SimConfig base;
  std::size_t repetitions = 1;
  std::uint64_t seed = 42;
  std::size_t dcl_positives = 10;
  bool retain_anchors = false;

  void validate() const;
};

/// Base config with one axis moved to `value` (range-checked).
sim::SimConfig apply_axis(const sim::SimConfig& base, SweepAxis axis, double value);

struct GridPointResult {
  double axis_value = 0.0;
  EstimatorArray mse{};   ///< mean over repetitions of the per-repetition MSE vs theta_sup
  EstimatorArray mean{};  ///< mean estimate over every retained anchor
  std::vector<EstimatorArray> rep_mse;
  /// Sample standard deviation of the per-anchor (theta_bcl - theta_sup).
  double bcl_sup_diff_sd = 0.0;
  std::size_t anchors_used = 0;
  std::size_t anchors_dropped = 0;  ///< anchors with no TN sample; theta_sup undefined
  std::vector<EstimatorArray> anchors;  ///< only filled when retain_anchors
};

struct EstimatorReport {
  std::string kind = "mse_sweep";  ///< or "mean_values"
  SweepGrid grid;
  std::vector<GridPointResult> rows;
};

/// All four estimates for one simulated anchor; weights use beta = 0.5.
/// Returns false (and leaves `out` untouched) when the anchor has no TN sample.
bool estimate_anchor(const sim::SimConfig& config, std::size_t anchor, std::size_t dcl_positives,
                     EstimatorArray& out);

EstimatorReport run_mse_sweep(const SweepGrid& grid);
EstimatorReport run_mean_values(const SweepGrid& grid);

struct LemmaCheck {
  std::string name;
  bool passed = false;
  double statistic = 0.0;
  double threshold = 0.0;
  std::string detail;
  std::vector<std::pair<double, double>> series;  ///< (N, value) where applicable
};

struct LemmaReport {
  sim::SimConfig config;
  std::vector<LemmaCheck> checks;

  bool all_passed() const;
};

struct LemmaOptions {
  std::size_t alpha_points = 25;
  std::size_t tau_points = 20;
  std::size_t phi_points = 20;
  double identity_tolerance = 1e-12;
  std::vector<std::size_t> rate_negatives{64, 256, 1024, 4096};
  double slope_low = -0.65;
  double slope_high = -0.35;
  std::vector<std::size_t> bound_negatives{64, 256};
};

/// Posterior identity, N^-1/2 consistency rate and the finite-N loss bound.
/// Requires beta = 0.5.
LemmaReport run_lemma_suite(const sim::SimConfig& config, const LemmaOptions& options = {});

/// Lemma-3 right-hand side tau- sqrt(2 pi / N).
double loss_gap_bound(double tau_neg, std::size_t n);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

struct GapPoint {
  double xhat = 0.0;
  double ratio = 0.0;  ///< p+/p- = x tau- / (m - x tau+); NaN at the pole
  bool at_pole = false;
};

struct BiasGapCurve {
  double m = 1.0;
  double tau_pos = 0.1;
  double pole = 10.0;         ///< m / tau+
  bool crosses_pole = false;  ///< grid spans the jump discontinuity
  std::vector<GapPoint> points;
};

double bias_gap_value(double m, double tau_pos, double xhat);
BiasGapCurve bias_gap_curve(double m, double tau_pos, std::span<const double> xhat_grid);

}  // namespace bcl::harness
