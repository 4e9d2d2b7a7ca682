#include "bcl/ecdf.hpp"

#include <algorithm>
#include <cmath>

#include "bcl/errors.hpp"

namespace bcl {

Ecdf Ecdf::build(std::span<const double> values) {
  if (values.empty()) detail::contract("Ecdf::build: empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  for (double v : sorted) {
    if (!std::isfinite(v)) detail::contract("Ecdf::build: non-finite value");
  }
  std::sort(sorted.begin(), sorted.end());
  return Ecdf(std::move(sorted));
}

double Ecdf::eval(double query, PlottingPosition pos) const {
  if (!std::isfinite(query)) detail::contract("Ecdf::eval: non-finite query");
  const auto at_or_below = static_cast<double>(
      std::upper_bound(sorted_.begin(), sorted_.end(), query) - sorted_.begin());
  const double n = static_cast<double>(sorted_.size());
  if (pos == PlottingPosition::MidRank) return std::max(0.0, at_or_below - 0.5) / n;
  return at_or_below / n;
}

}  // namespace bcl
