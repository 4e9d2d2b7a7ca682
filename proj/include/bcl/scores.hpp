#pragma once

#include <optional>
#include <span>
#include <vector>

namespace bcl {

enum class Label { TrueNegative, FalseNegative };

const char* to_string(Label label);

/// A simulated (post-exponentiation) score with its ground-truth class.
struct LabeledScore {
  double value = 1.0;
  Label label = Label::TrueNegative;
};

/// One anchor's positive score and its N unlabeled scores, all strictly positive.
///
/// `extra_pos_scores` holds the K additional positives the DCL estimator needs.
class ScoreBatch {
 public:
  ScoreBatch(double pos_score, std::vector<double> neg_scores,
             std::optional<std::vector<double>> extra_pos_scores = std::nullopt);

  double pos_score() const { return pos_score_; }
  std::span<const double> neg_scores() const { return neg_scores_; }
  const std::optional<std::vector<double>>& extra_pos_scores() const { return extra_pos_scores_; }
  std::size_t size() const { return neg_scores_.size(); }

 private:
  double pos_score_;
  std::vector<double> neg_scores_;
  std::optional<std::vector<double>> extra_pos_scores_;
};

/// Per-negative importance weights; every entry finite and non-negative.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<double> weights);

  static WeightVector ones(std::size_t n);

  std::span<const double> values() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }

 private:
  std::vector<double> weights_;
};

}  // namespace bcl
