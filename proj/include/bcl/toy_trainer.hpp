#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bcl/errors.hpp"
#include "bcl/weights.hpp"

namespace bcl::toy {

/// Two-layer encoder  x -> tanh(W1 x + b1) -> W2 h + b2 -> (1/t) u/|u|.
/// Embeddings lie on the sphere of radius 1/t, so dot products span [-1/t^2, 1/t^2].
struct EncoderParams {
  Eigen::MatrixXd w1;
  Eigen::VectorXd b1;
  Eigen::MatrixXd w2;
  Eigen::VectorXd b2;
  double temperature = 0.5;

  static EncoderParams random(std::size_t input_dim, std::size_t hidden_dim, std::size_t output_dim,
                              double temperature, std::uint64_t seed);

  std::size_t input_dim() const { return static_cast<std::size_t>(w1.cols()); }
  std::size_t hidden_dim() const { return static_cast<std::size_t>(w1.rows()); }
  std::size_t output_dim() const { return static_cast<std::size_t>(w2.rows()); }
  std::size_t parameter_count() const;

  /// w1, b1, w2, b2, each row-major, concatenated.
  Eigen::VectorXd flatten() const;
  void assign(const Eigen::VectorXd& flat);
};

/// Gradient with the same tensor layout as EncoderParams.
struct EncoderGradient {
  Eigen::MatrixXd w1;
  Eigen::VectorXd b1;
  Eigen::MatrixXd w2;
  Eigen::VectorXd b2;

  static EncoderGradient zeros_like(const EncoderParams& p);
  Eigen::VectorXd flatten() const;
  EncoderGradient& operator+=(const EncoderGradient& other);
  EncoderGradient& operator*=(double s);
};

Eigen::VectorXd encode(const EncoderParams& params, const Eigen::VectorXd& input);

struct LossAndGrad {
  double loss = 0.0;
  EncoderGradient grad;
  WeightVector weights;
};

/// Weighted contrastive loss for one anchor and its analytic gradient.
/// Weights come from the eCDF of the batch's own scores and are held constant
/// (no gradient flows through them). `mixture == nullopt` uses unit weights,
/// i.e. the biased InfoNCE loss.
LossAndGrad loss_and_grad(const EncoderParams& params, const Eigen::VectorXd& anchor,
                          const Eigen::VectorXd& positive, std::span<const Eigen::VectorXd> negatives,
                          const std::optional<MixtureParams>& mixture);

/// Same loss and gradient with caller-fixed weights.
LossAndGrad loss_and_grad(const EncoderParams& params, const Eigen::VectorXd& anchor,
                          const Eigen::VectorXd& positive, std::span<const Eigen::VectorXd> negatives,
                          const WeightVector& weights);

struct BlobSpec {
  int classes = 2;
  std::size_t per_class = 60;
  std::size_t dim = 4;
  double separation = 2.0;  ///< distance of each class mean from the origin
  double spread = 1.0;      ///< isotropic standard deviation
  std::uint64_t seed = 7;
};

/// Labeled points; labels only build positives and evaluate probes, never enter the loss.
struct SyntheticDataset {
  std::vector<Eigen::VectorXd> points;
  std::vector<int> labels;
  int classes = 0;

  static SyntheticDataset gaussian_blobs(const BlobSpec& spec);
  std::size_t size() const { return points.size(); }
};

enum class LossMode { Biased, Bcl };

struct TrainConfig {
  LossMode mode = LossMode::Bcl;
  double beta = 0.5;
  double tau_pos = 0.5;
  std::size_t epochs = 200;
  double learning_rate = 0.05;
  std::size_t anchors_per_step = 8;
  std::size_t negatives = 16;
  double augment_noise = 1.0;
  std::size_t hidden_dim = 16;
  std::size_t embed_dim = 8;
  double temperature = 0.5;
  double probe_fraction = 0.3;
  std::uint64_t seed = 1;

  void validate() const;
};

struct EpochMetrics {
  std::size_t epoch = 0;
  double loss = 0.0;
  double alpha_hat = 0.5;
  double probe_accuracy = 0.0;
};

struct TrainResult {
  EncoderParams params;
  std::vector<EpochMetrics> log;
};

class TrainingDiverged : public NumericalError {
 public:
  TrainingDiverged(std::size_t epoch, const std::string& what);
  std::size_t epoch() const { return epoch_; }

 private:
  std::size_t epoch_;
};

/// Held-out split used for alpha estimation and the linear probe.
struct DataSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> probe_fit;
  std::vector<std::size_t> probe_eval;
};
DataSplit split_dataset(const SyntheticDataset& data, const TrainConfig& config);

/// Macro AUC over probe anchors: same-class scores vs other-class scores.
double probe_alpha(const EncoderParams& params, const SyntheticDataset& data,
                   std::span<const std::size_t> indices);

/// Softmax regression on embeddings of `fit`, accuracy on `eval`.
double linear_probe_accuracy(const EncoderParams& params, const SyntheticDataset& data,
                             std::span<const std::size_t> fit, std::span<const std::size_t> eval);

/// Plain SGD over contrastive batches. Positives are noisy copies of the anchor;
/// negatives are drawn uniformly from the unlabeled training split. Each
/// anchor's views and negatives are fixed per (seed, anchor).
TrainResult train(const SyntheticDataset& data, const TrainConfig& config,
                  std::optional<EncoderParams> init = std::nullopt);

void write_metrics_csv(std::span<const EpochMetrics> log, std::ostream& out);

/// Flat little-endian binary: "BCLE", u64 input/hidden/output dims, f64 t,
/// then w1, b1, w2, b2 row-major as f64.
void save_checkpoint(const EncoderParams& params, const std::filesystem::path& path);
EncoderParams load_checkpoint(const std::filesystem::path& path);

}  // namespace bcl::toy
