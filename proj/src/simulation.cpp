#include "bcl/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bcl/errors.hpp"

namespace bcl::sim {

namespace {

// Stream domains for CounterRng keys.
constexpr std::uint64_t kSampleStream = 1;
constexpr std::uint64_t kSlideStream = 2;
constexpr std::uint64_t kPositiveStream = 3;

void require_alpha(double alpha) {
  if (!(alpha >= 0.5 && alpha <= 1.0)) {
    detail::contract("alpha must be in [0.5, 1], got " + std::to_string(alpha));
  }
}

}  // namespace

SimConfig SimConfig::distribution_preset() {
  SimConfig c;
  c.proposal = ProposalDist::normal(0.0, 1.0);
  c.t = 2.0;
  c.anchors = 1;
  c.negatives = 20000;
  return c;
}

void SimConfig::validate() const {
  if (!(t > 0.0) || !std::isfinite(t)) detail::contract("t must be > 0");
  if (anchors < 1) detail::contract("m (anchors) must be >= 1");
  if (negatives < 1) detail::contract("n (negatives) must be >= 1");
  proposal.validate_for_temperature(t);
}

double acceptance_probability(Label label, double phi, double alpha) {
  require_alpha(alpha);
  if (label == Label::TrueNegative) return (alpha + (1.0 - 2.0 * alpha) * phi) / alpha;
  return (1.0 - alpha + (2.0 * alpha - 1.0) * phi) / alpha;
}

double sample_conditional(Label label, const ProposalDist& proposal, double alpha,
                          CounterRng& rng, std::size_t max_proposals) {
  require_alpha(alpha);
  for (std::size_t i = 0; i < max_proposals; ++i) {
    const double x = proposal.sample(rng);
    const double u = rng.uniform();
    if (u <= acceptance_probability(label, proposal.cdf(x), alpha)) return x;
  }
  throw SamplingFailure("sample_conditional: no acceptance after " + std::to_string(max_proposals) +
                        " proposals (" + to_string(label) + ", alpha=" + std::to_string(alpha) +
                        ", " + proposal.describe() + ")");
}

std::vector<double> AnchorDraw::mapped_scores() const {
  std::vector<double> out(samples.size());
  std::transform(samples.begin(), samples.end(), out.begin(), [](const SimSample& s) { return s.mapped; });
  return out;
}

std::vector<LabeledScore> AnchorDraw::labeled_scores() const {
  std::vector<LabeledScore> out(samples.size());
  std::transform(samples.begin(), samples.end(), out.begin(),
                 [](const SimSample& s) { return LabeledScore{s.mapped, s.label}; });
  return out;
}

std::size_t AnchorDraw::true_negatives() const {
  return static_cast<std::size_t>(std::count_if(samples.begin(), samples.end(), [](const SimSample& s) {
    return s.label == Label::TrueNegative;
  }));
}

std::size_t SimBatch::total_samples() const {
  std::size_t n = 0;
  for (const auto& a : anchors) n += a.samples.size();
  return n;
}

ProposalDist anchor_proposal(const SimConfig& config, std::size_t anchor) {
  CounterRng rng(config.seed, {kSlideStream, anchor});
  return config.proposal.slid(rng, config.t);
}

SimSample draw_sample(const SimConfig& config, const ProposalDist& proposal, std::size_t anchor,
                      std::size_t index) {
  CounterRng rng(config.seed, {kSampleStream, anchor, index});
  const Label label =
      rng.uniform() < config.mixture.tau_pos() ? Label::FalseNegative : Label::TrueNegative;
  const double raw = sample_conditional(label, proposal, config.mixture.alpha(), rng);
  return {raw, std::exp(raw / config.t), label};
}

AnchorDraw generate_anchor(const SimConfig& config, std::size_t anchor) {
  AnchorDraw draw{anchor_proposal(config, anchor), {}};
  draw.samples.reserve(config.negatives);
  for (std::size_t j = 0; j < config.negatives; ++j) {
    draw.samples.push_back(draw_sample(config, draw.proposal, anchor, j));
  }
  return draw;
}

SimBatch generate_batch(const SimConfig& config) {
  config.validate();
  SimBatch batch{config, std::vector<AnchorDraw>(config.anchors, AnchorDraw{config.proposal, {}})};
  std::exception_ptr failure;
  const auto m = static_cast<long long>(config.anchors);
#pragma omp parallel for schedule(dynamic, 8)
  for (long long i = 0; i < m; ++i) {
    try {
      batch.anchors[static_cast<std::size_t>(i)] = generate_anchor(config, static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(bcl_sim_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return batch;
}

SimBatch generate_batch_serial(const SimConfig& config) {
  config.validate();
  SimBatch batch{config, {}};
  batch.anchors.reserve(config.anchors);
  for (std::size_t i = 0; i < config.anchors; ++i) batch.anchors.push_back(generate_anchor(config, i));
  return batch;
}

std::vector<double> draw_positive_scores(const SimConfig& config, const ProposalDist& proposal,
                                         std::size_t anchor, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    CounterRng rng(config.seed, {kPositiveStream, anchor, k});
    const double raw = sample_conditional(Label::FalseNegative, proposal, config.mixture.alpha(), rng);
    out[k] = std::exp(raw / config.t);
  }
  return out;
}

double mixture_density(Population pop, double x, double alpha, double tau_pos,
                       const ProposalDist& proposal) {
  require_alpha(alpha);
  const double f = proposal.pdf(x);
  if (f == 0.0) return 0.0;
  const double c = proposal.cdf(x);
  const double lower = 2.0 * f * (1.0 - c);  // density of the minimum of two draws
  const double upper = 2.0 * f * c;          // density of the maximum
  const double tn = alpha * lower + (1.0 - alpha) * upper;
  const double fn = alpha * upper + (1.0 - alpha) * lower;
  switch (pop) {
    case Population::TrueNegative: return tn;
    case Population::FalseNegative: return fn;
    case Population::Unlabeled: break;
  }
  if (!(tau_pos >= 0.0 && tau_pos <= 1.0)) detail::contract("tau_pos must be in [0, 1]");
  return (1.0 - tau_pos) * tn + tau_pos * fn;
}

double mixture_cdf(Population pop, double x, double alpha, double tau_pos,
                   const ProposalDist& proposal) {
  require_alpha(alpha);
  const double c = proposal.cdf(x);
  const double lower = 2.0 * c - c * c;  // CDF of the minimum
  const double upper = c * c;            // CDF of the maximum
  const double tn = alpha * lower + (1.0 - alpha) * upper;
  const double fn = alpha * upper + (1.0 - alpha) * lower;
  switch (pop) {
    case Population::TrueNegative: return tn;
    case Population::FalseNegative: return fn;
    case Population::Unlabeled: break;
  }
  if (!(tau_pos >= 0.0 && tau_pos <= 1.0)) detail::contract("tau_pos must be in [0, 1]");
  return (1.0 - tau_pos) * tn + tau_pos * fn;
}

double population_mapped_mean(Population pop, double alpha, double tau_pos,
                              const ProposalDist& proposal, double t) {
  if (!(t > 0.0)) detail::contract("t must be > 0");
  auto [lo, hi] = proposal.integration_range();
  if (proposal.kind() == ProposalDist::Kind::Normal) {
    // exp(x/t) tilts the Gaussian mass right by sd^2/t.
    hi += proposal.sd() * proposal.sd() / t;
  }
  auto integrand = [&](double x) { return std::exp(x / t) * mixture_density(pop, x, alpha, tau_pos, proposal); };
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  const double value = gauss_kronrod<double, 31>::integrate(integrand, lo, hi, 15, 1e-13, &error);
  return value;
}

double estimate_alpha_auc(std::span<const double> pos_scores, std::span<const double> neg_scores) {
  if (pos_scores.empty() || neg_scores.empty()) {
    detail::contract("estimate_alpha_auc: both score lists must be non-empty");
  }
  std::vector<double> negs(neg_scores.begin(), neg_scores.end());
  std::sort(negs.begin(), negs.end());
  double wins = 0.0;
  for (double p : pos_scores) {
    wins += static_cast<double>(std::upper_bound(negs.begin(), negs.end(), p) - negs.begin());
  }
  return wins / (static_cast<double>(pos_scores.size()) * static_cast<double>(negs.size()));
}

double mixture_pair_auc(double alpha) {
  require_alpha(alpha);
  return (4.0 * alpha + 1.0) / 6.0;
}

}  // namespace bcl::sim
