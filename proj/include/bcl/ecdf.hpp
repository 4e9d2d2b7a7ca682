#pragma once

#include <span>
#include <vector>

namespace bcl {

enum class PlottingPosition {
  Inclusive,  ///< count(x_i <= q) / n; the maximum maps to 1
  MidRank,    ///< (count(x_i <= q) - 1/2) / n, floored at 0
};

/// Empirical CDF over a sorted copy of a sample; ties keep their multiplicity.
class Ecdf {
 public:
  static Ecdf build(std::span<const double> values);

  /// Fraction of the sample at or below `query`. O(log n).
  double eval(double query, PlottingPosition pos = PlottingPosition::Inclusive) const;

  std::span<const double> values() const { return sorted_; }
  std::size_t size() const { return sorted_.size(); }

 private:
  explicit Ecdf(std::vector<double> sorted) : sorted_(std::move(sorted)) {}
  std::vector<double> sorted_;
};

}  // namespace bcl
