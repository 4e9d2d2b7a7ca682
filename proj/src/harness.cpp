#include "bcl/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <sstream>

#include "bcl/errors.hpp"
#include "bcl/estimators.hpp"
#include "bcl/weights.hpp"

namespace bcl::harness {

namespace {

constexpr std::size_t idx(Estimator e) { return static_cast<std::size_t>(e); }

std::size_t as_count(double v, const char* what) {
  if (!(v >= 1.0) || v != std::floor(v) || v > 1e12) {
    detail::contract(std::string(what) + " must be an integer >= 1, got " + std::to_string(v));
  }
  return static_cast<std::size_t>(v);
}

template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  std::exception_ptr failure;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(bcl_harness_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

EstimatorReport evaluate_grid(const SweepGrid& grid, const char* kind) {
  grid.validate();
  EstimatorReport report{kind, grid, {}};
  for (double value : grid.values) {
    GridPointResult row;
    row.axis_value = value;
    EstimatorArray sums{};
    std::vector<double> diffs;
    for (std::size_t r = 0; r < grid.repetitions; ++r) {
      sim::SimConfig config = apply_axis(grid.base, grid.axis, value);
      // Seeds depend on the repetition only, so grid points share random numbers.
      config.seed = derive_seed(grid.seed, {r});
      std::vector<EstimatorArray> per_anchor(config.anchors);
      std::vector<char> kept(config.anchors, 0);
      parallel_for(config.anchors, [&](std::size_t i) {
        kept[i] = estimate_anchor(config, i, grid.dcl_positives, per_anchor[i]) ? 1 : 0;
      });

      EstimatorArray sq{};
      std::size_t used = 0;
      for (std::size_t i = 0; i < config.anchors; ++i) {
        if (!kept[i]) {
          ++row.anchors_dropped;
          continue;
        }
        const auto& th = per_anchor[i];
        for (Estimator e : kEstimators) {
          const double d = th[idx(e)] - th[idx(Estimator::Sup)];
          sq[idx(e)] += d * d;
          sums[idx(e)] += th[idx(e)];
        }
        diffs.push_back(th[idx(Estimator::Bcl)] - th[idx(Estimator::Sup)]);
        if (grid.retain_anchors) row.anchors.push_back(th);
        ++used;
      }
      EstimatorArray rep{};
      for (Estimator e : kEstimators) {
        rep[idx(e)] = used ? sq[idx(e)] / static_cast<double>(used) : std::numeric_limits<double>::quiet_NaN();
      }
      row.rep_mse.push_back(rep);
      row.anchors_used += used;
    }
    for (Estimator e : kEstimators) {
      double s = 0.0;
      for (const auto& rep : row.rep_mse) s += rep[idx(e)];
      row.mse[idx(e)] = s / static_cast<double>(row.rep_mse.size());
      row.mean[idx(e)] = row.anchors_used ? sums[idx(e)] / static_cast<double>(row.anchors_used)
                                          : std::numeric_limits<double>::quiet_NaN();
    }
    if (diffs.size() > 1) {
      double mean = 0.0;
      for (double d : diffs) mean += d;
      mean /= static_cast<double>(diffs.size());
      double ss = 0.0;
      for (double d : diffs) ss += (d - mean) * (d - mean);
      row.bcl_sup_diff_sd = std::sqrt(ss / static_cast<double>(diffs.size() - 1));
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace

const char* to_string(Estimator e) {
  switch (e) {
    case Estimator::Biased: return "biased";
    case Estimator::Dcl: return "dcl";
    case Estimator::Bcl: return "bcl";
    case Estimator::Sup: return "sup";
  }
  return "?";
}

const char* to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Alpha: return "alpha";
    case SweepAxis::N: return "n";
    case SweepAxis::TauPos: return "tau_pos";
    case SweepAxis::Gamma: return "gamma";
    case SweepAxis::T: return "t";
    case SweepAxis::M: return "m";
  }
  return "?";
}

SweepAxis parse_axis(const std::string& name) {
  for (SweepAxis a : {SweepAxis::Alpha, SweepAxis::N, SweepAxis::TauPos, SweepAxis::Gamma,
                      SweepAxis::T, SweepAxis::M}) {
    if (name == to_string(a)) return a;
  }
  if (name == "N") return SweepAxis::N;
  if (name == "M") return SweepAxis::M;
  if (name == "tau-pos") return SweepAxis::TauPos;
  detail::contract("axis must be one of alpha, n, tau_pos, gamma, t, m; got '" + name + "'");
}

void SweepGrid::validate() const {
  if (repetitions < 1) detail::contract("repetitions must be >= 1");
  if (dcl_positives < 1) detail::contract("dcl positives K must be >= 1");
  base.validate();
  for (double v : values) apply_axis(base, axis, v).validate();
}

sim::SimConfig apply_axis(const sim::SimConfig& base, SweepAxis axis, double value) {
  sim::SimConfig c = base;
  const auto& mx = base.mixture;
  switch (axis) {
    case SweepAxis::Alpha: c.mixture = MixtureParams(value, mx.beta(), mx.tau_pos()); break;
    case SweepAxis::TauPos: c.mixture = MixtureParams(mx.alpha(), mx.beta(), value); break;
    case SweepAxis::N: c.negatives = as_count(value, "n"); break;
    case SweepAxis::M: c.anchors = as_count(value, "m"); break;
    case SweepAxis::T:
      if (!(value > 0.0)) detail::contract("t must be > 0, got " + std::to_string(value));
      c.t = value;
      break;
    case SweepAxis::Gamma:
      if (base.proposal.kind() != sim::ProposalDist::Kind::Uniform) {
        detail::contract("gamma sweeps need a uniform proposal");
      }
      c.proposal = sim::ProposalDist::uniform(base.proposal.lower(), base.proposal.upper(), value);
      break;
  }
  c.validate();
  return c;
}

bool estimate_anchor(const sim::SimConfig& config, std::size_t anchor, std::size_t dcl_positives,
                     EstimatorArray& out) {
  const sim::AnchorDraw draw = sim::generate_anchor(config, anchor);
  if (draw.true_negatives() == 0) return false;
  const std::vector<double> negs = draw.mapped_scores();
  const std::vector<LabeledScore> labeled = draw.labeled_scores();
  const std::vector<double> pos = sim::draw_positive_scores(config, draw.proposal, anchor, dcl_positives);
  const WeightVector w = weight_batch(negs, config.mixture.with_beta(0.5));

  out[idx(Estimator::Biased)] = theta_biased(negs);
  out[idx(Estimator::Dcl)] = theta_dcl(negs, pos, config.mixture.tau_pos());
  out[idx(Estimator::Bcl)] = theta_bcl(negs, w);
  out[idx(Estimator::Sup)] = theta_sup(labeled);
  return true;
}

EstimatorReport run_mse_sweep(const SweepGrid& grid) { return evaluate_grid(grid, "mse_sweep"); }

EstimatorReport run_mean_values(const SweepGrid& grid) { return evaluate_grid(grid, "mean_values"); }

bool LemmaReport::all_passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

double loss_gap_bound(double tau_neg, std::size_t n) {
  return tau_neg * std::sqrt(2.0 * std::numbers::pi / static_cast<double>(n));
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) detail::contract("loglog_slope: need >= 2 paired points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(y.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

namespace {

LemmaCheck posterior_identity_check(const LemmaOptions& opt) {
  LemmaCheck check{"posterior_identity", false, 0.0, opt.identity_tolerance, "", {}};
  double worst = 0.0;
  std::size_t points = 0;
  for (std::size_t ia = 0; ia < opt.alpha_points; ++ia) {
    const double alpha = 0.5 + 0.5 * static_cast<double>(ia) / static_cast<double>(opt.alpha_points - 1);
    for (std::size_t it = 1; it <= opt.tau_points; ++it) {
      const double tau = static_cast<double>(it) / static_cast<double>(opt.tau_points + 1);
      const MixtureParams p(alpha, 0.5, tau);
      for (std::size_t ip = 0; ip < opt.phi_points; ++ip) {
        const double phi = static_cast<double>(ip) / static_cast<double>(opt.phi_points - 1);
        worst = std::max(worst, std::abs(importance_weight(phi, p) * p.tau_neg() - posterior_tn(phi, p)));
        ++points;
      }
    }
  }
  check.statistic = worst;
  check.passed = worst <= opt.identity_tolerance;
  check.detail = "max |w*tau- - P(TN|x)| over " + std::to_string(points) + " grid points";
  return check;
}

LemmaCheck consistency_rate_check(const sim::SimConfig& config, const LemmaOptions& opt) {
  LemmaCheck check{"consistency_rate", false, 0.0, opt.slope_high, "", {}};
  std::vector<double> ns, errs;
  for (std::size_t n : opt.rate_negatives) {
    sim::SimConfig c = config;
    c.negatives = n;
    std::vector<double> abs_err(c.anchors, 0.0);
    parallel_for(c.anchors, [&](std::size_t i) {
      const sim::AnchorDraw draw = sim::generate_anchor(c, i);
      const std::vector<double> negs = draw.mapped_scores();
      const double est = theta_bcl(negs, weight_batch(negs, c.mixture));
      const double truth = sim::population_mapped_mean(sim::Population::TrueNegative, c.mixture.alpha(),
                                                       c.mixture.tau_pos(), draw.proposal, c.t);
      abs_err[i] = std::abs(est - truth);
    });
    double mean = 0.0;
    for (double e : abs_err) mean += e;
    mean /= static_cast<double>(abs_err.size());
    ns.push_back(static_cast<double>(n));
    errs.push_back(mean);
    check.series.emplace_back(static_cast<double>(n), mean);
  }
  check.statistic = loglog_slope(ns, errs);
  check.passed = check.statistic >= opt.slope_low && check.statistic <= opt.slope_high;
  std::ostringstream os;
  os << "log-log slope of mean |theta_bcl - theta_pop| vs N, accepted range [" << opt.slope_low << ", "
     << opt.slope_high << "], theory -0.5";
  check.detail = os.str();
  return check;
}

LemmaCheck loss_bound_check(const sim::SimConfig& config, std::size_t n) {
  sim::SimConfig c = config;
  c.negatives = n;
  LemmaCheck check{"loss_gap_bound_n" + std::to_string(n), false, 0.0,
                   loss_gap_bound(c.mixture.tau_neg(), n), "", {}};
  std::vector<double> gaps(c.anchors, 0.0);
  std::vector<char> kept(c.anchors, 0);
  parallel_for(c.anchors, [&](std::size_t i) {
    const sim::AnchorDraw draw = sim::generate_anchor(c, i);
    if (draw.true_negatives() == 0) return;
    const std::vector<double> negs = draw.mapped_scores();
    const double pos = sim::draw_positive_scores(c, draw.proposal, i, 1)[0];
    const double bcl = contrastive_loss(ScoreBatch(pos, negs), weight_batch(negs, c.mixture));
    // Supervised loss with the N negatives replaced by N copies of the TN mean.
    const double sup = std::log1p(static_cast<double>(n) * theta_sup(draw.labeled_scores()) / pos);
    gaps[i] = std::abs(bcl - sup);
    kept[i] = 1;
  });
  double sum = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    if (!kept[i]) continue;
    sum += gaps[i];
    ++used;
  }
  check.statistic = used ? sum / static_cast<double>(used) : std::numeric_limits<double>::quiet_NaN();
  check.passed = used > 0 && check.statistic <= check.threshold;
  check.series.emplace_back(static_cast<double>(n), check.statistic);
  check.detail = "mean |L_bcl - L_sup| over " + std::to_string(used) + " anchors vs tau- sqrt(2 pi / N)";
  return check;
}

}  // namespace

LemmaReport run_lemma_suite(const sim::SimConfig& config, const LemmaOptions& options) {
  if (config.mixture.beta() != 0.5) {
    detail::contract("lemma suite requires beta = 0.5, got " + std::to_string(config.mixture.beta()));
  }
  config.validate();
  LemmaReport report{config, {}};
  report.checks.push_back(posterior_identity_check(options));
  report.checks.push_back(consistency_rate_check(config, options));
  for (std::size_t n : options.bound_negatives) report.checks.push_back(loss_bound_check(config, n));
  return report;
}

double bias_gap_value(double m, double tau_pos, double xhat) {
  return xhat * (1.0 - tau_pos) / (m - xhat * tau_pos);
}

BiasGapCurve bias_gap_curve(double m, double tau_pos, std::span<const double> xhat_grid) {
  if (!(m > 0.0) || !std::isfinite(m)) detail::contract("bias_gap_curve: m must be > 0");
  if (!(tau_pos > 0.0 && tau_pos < 1.0)) detail::contract("bias_gap_curve: tau_pos must be in (0, 1)");
  BiasGapCurve curve{m, tau_pos, m / tau_pos, false, {}};
  bool below = false, above = false;
  for (double x : xhat_grid) {
    if (!std::isfinite(x)) detail::contract("bias_gap_curve: non-finite grid point");
    GapPoint p{x, 0.0, false};
    if (x == curve.pole || m - x * tau_pos == 0.0) {
      p.at_pole = true;
      p.ratio = std::numeric_limits<double>::quiet_NaN();
    } else {
      p.ratio = bias_gap_value(m, tau_pos, x);
    }
    below = below || x < curve.pole;
    above = above || x > curve.pole;
    curve.points.push_back(p);
  }
  curve.crosses_pole = (below && above) || std::any_of(curve.points.begin(), curve.points.end(),
                                                       [](const GapPoint& p) { return p.at_pole; });
  return curve;
}

}  // namespace bcl::harness
