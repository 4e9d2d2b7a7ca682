#include "bcl/proposal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bcl/errors.hpp"

namespace bcl::sim {

ProposalDist ProposalDist::normal(double mean, double sd) {
  if (!std::isfinite(mean)) detail::contract("normal proposal: mean must be finite");
  if (!(sd > 0.0) || !std::isfinite(sd)) detail::contract("normal proposal: sd must be > 0");
  return {Kind::Normal, mean, sd, 0.0};
}

ProposalDist ProposalDist::uniform(double a, double b, double gamma) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    detail::contract("uniform proposal: need finite a < b");
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    detail::contract("uniform proposal: gamma must be in [0, 1], got " + std::to_string(gamma));
  }
  return {Kind::Uniform, a, b, gamma};
}

double ProposalDist::pdf(double x) const {
  if (kind_ == Kind::Normal) {
    const double z = (x - p1_) / p2_;
    return std::exp(-0.5 * z * z) / (p2_ * std::sqrt(2.0 * std::numbers::pi));
  }
  return (x < p1_ || x > p2_) ? 0.0 : 1.0 / (p2_ - p1_);
}

double ProposalDist::cdf(double x) const {
  if (kind_ == Kind::Normal) return 0.5 * std::erfc(-(x - p1_) / (p2_ * std::numbers::sqrt2));
  if (x <= p1_) return 0.0;
  if (x >= p2_) return 1.0;
  return (x - p1_) / (p2_ - p1_);
}

double ProposalDist::sample(CounterRng& rng) const {
  if (kind_ == Kind::Normal) return p1_ + p2_ * rng.normal();
  return p1_ + (p2_ - p1_) * rng.uniform();
}

std::pair<double, double> ProposalDist::integration_range() const {
  if (kind_ == Kind::Normal) return {p1_ - 14.0 * p2_, p1_ + 14.0 * p2_};
  return {p1_, p2_};
}

void ProposalDist::validate_for_temperature(double t) const {
  if (!(t > 0.0)) detail::contract("temperature t must be > 0");
  if (kind_ != Kind::Uniform) return;
  const double bound = 1.0 / (t * t);
  if (p1_ < -bound || p2_ > bound) {
    std::ostringstream os;
    os << "uniform proposal [" << p1_ << ", " << p2_ << "] must lie within [-1/t^2, 1/t^2] = ["
       << -bound << ", " << bound << "]";
    detail::contract(os.str());
  }
}

ProposalDist ProposalDist::slid(CounterRng& rng, double t) const {
  if (kind_ != Kind::Uniform || gamma_ == 0.0) return *this;
  const double bound = 1.0 / (t * t);
  const double u = 2.0 * rng.uniform() - 1.0;
  const double room = u >= 0.0 ? bound - p2_ : p1_ + bound;
  const double shift = u * gamma_ * std::max(0.0, room);
  const double a = std::clamp(p1_ + shift, -bound, bound);
  const double b = std::clamp(p2_ + shift, -bound, bound);
  return {Kind::Uniform, a, b, gamma_};
}

std::string ProposalDist::describe() const {
  std::ostringstream os;
  if (kind_ == Kind::Normal) {
    os << "normal(" << p1_ << ", " << p2_ << ")";
  } else {
    os << "uniform(" << p1_ << ", " << p2_ << "; gamma=" << gamma_ << ")";
  }
  return os.str();
}

}  // namespace bcl::sim
