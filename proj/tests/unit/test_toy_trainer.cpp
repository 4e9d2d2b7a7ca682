#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <vector>

#include "bcl/errors.hpp"
#include "bcl/rng.hpp"
#include "bcl/toy_trainer.hpp"

using namespace bcl;
using namespace bcl::toy;

namespace {

Eigen::VectorXd random_vec(std::size_t d, CounterRng& rng) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.normal();
  return v;
}

struct Draw {
  EncoderParams params;
  Eigen::VectorXd anchor, positive;
  std::vector<Eigen::VectorXd> negatives;
};

Draw random_draw(std::uint64_t seed) {
  CounterRng rng(seed, {99});
  Draw d{EncoderParams::random(5, 12, 8, 0.5, seed), random_vec(5, rng), random_vec(5, rng), {}};
  d.params.b1 = random_vec(12, rng) * 0.1;
  d.params.b2 = random_vec(8, rng) * 0.1;
  for (int i = 0; i < 6; ++i) d.negatives.push_back(random_vec(5, rng));
  return d;
}

// Central differences with the weights held fixed, as in the analytic gradient.
Eigen::VectorXd numeric_grad(const Draw& d, const WeightVector& w, double h) {
  const Eigen::VectorXd theta = d.params.flatten();
  Eigen::VectorXd g(theta.size());
  EncoderParams p = d.params;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    Eigen::VectorXd t = theta;
    t[i] += h;
    p.assign(t);
    const double up = loss_and_grad(p, d.anchor, d.positive, d.negatives, w).loss;
    t[i] -= 2 * h;
    p.assign(t);
    const double down = loss_and_grad(p, d.anchor, d.positive, d.negatives, w).loss;
    g[i] = (up - down) / (2 * h);
  }
  return g;
}

double max_rel_error(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double worst = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double m = std::max(std::abs(a[i]), std::abs(b[i]));
    if (m < 1e-8) continue;
    worst = std::max(worst, std::abs(a[i] - b[i]) / m);
  }
  return worst;
}

}  // namespace

TEST(Encoder, EmbeddingOnSphere) {
  const auto p = EncoderParams::random(4, 8, 3, 0.5, 1);
  CounterRng rng(2, {});
  for (int i = 0; i < 50; ++i) {
    const auto x = random_vec(4, rng);
    const auto z = encode(p, x);
    EXPECT_NEAR(z.norm(), 2.0, 1e-9);
    EXPECT_EQ(encode(p, x), z);
  }
  EXPECT_THROW(encode(p, Eigen::VectorXd::Zero(3)), ContractViolation);
}

TEST(Encoder, ZeroWeightsGiveConstantEmbedding) {
  auto p = EncoderParams::random(3, 4, 2, 1.0, 1);
  p.w1.setZero();
  p.w2.setZero();
  p.b2 << 1.0, 0.0;
  CounterRng rng(3, {});
  const auto z0 = encode(p, random_vec(3, rng));
  EXPECT_EQ(encode(p, random_vec(3, rng)), z0);
  p.b2.setZero();
  EXPECT_THROW(encode(p, random_vec(3, rng)), NumericalError);
}

TEST(Encoder, FlattenAssignRoundTrip) {
  auto p = EncoderParams::random(3, 5, 2, 0.5, 4);
  const auto flat = p.flatten();
  EXPECT_EQ(static_cast<std::size_t>(flat.size()), p.parameter_count());
  EXPECT_EQ(p.parameter_count(), 5u * 3 + 5 + 2 * 5 + 2);
  EXPECT_EQ(flat[1], p.w1(0, 1));
  auto q = EncoderParams::random(3, 5, 2, 0.5, 5);
  q.assign(flat);
  EXPECT_EQ(q.flatten(), flat);
  EXPECT_THROW(q.assign(Eigen::VectorXd::Zero(3)), ContractViolation);
}

TEST(LossAndGrad, MatchesFiniteDifferences) {
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const auto d = random_draw(s);
    const auto lg = loss_and_grad(d.params, d.anchor, d.positive, d.negatives, MixtureParams(0.8, 0.6, 0.2));
    const auto fd = numeric_grad(d, lg.weights, 1e-5);
    EXPECT_LT(max_rel_error(lg.grad.flatten(), fd), 1e-4) << "draw " << s;
  }
}

TEST(LossAndGrad, ZeroWeightsKillNegativeTerm) {
  const auto d = random_draw(3);
  const WeightVector zero(std::vector<double>(d.negatives.size(), 0.0));
  const auto lg = loss_and_grad(d.params, d.anchor, d.positive, d.negatives, zero);
  EXPECT_EQ(lg.loss, 0.0);
  EXPECT_EQ(lg.grad.flatten().cwiseAbs().maxCoeff(), 0.0);
}

TEST(LossAndGrad, DegenerateCollapseBitIdentical) {
  for (std::uint64_t s = 1; s <= 5; ++s) {
    const auto d = random_draw(s);
    const auto bcl = loss_and_grad(d.params, d.anchor, d.positive, d.negatives, MixtureParams(0.5, 0.5, 0.3));
    const auto biased = loss_and_grad(d.params, d.anchor, d.positive, d.negatives, std::nullopt);
    EXPECT_EQ(bcl.loss, biased.loss);
    EXPECT_EQ(bcl.grad.flatten(), biased.grad.flatten());
  }
}

TEST(LossAndGrad, Validation) {
  const auto d = random_draw(1);
  EXPECT_THROW(loss_and_grad(d.params, d.anchor, d.positive, {}, std::nullopt), ContractViolation);
  EXPECT_THROW(loss_and_grad(d.params, d.anchor, d.positive, d.negatives, WeightVector::ones(2)), ContractViolation);
}

TEST(Data, BlobsAndSplit) {
  BlobSpec spec;
  spec.classes = 4;
  spec.per_class = 30;
  const auto data = SyntheticDataset::gaussian_blobs(spec);
  EXPECT_EQ(data.size(), 120u);
  EXPECT_EQ(data.classes, 4);
  EXPECT_EQ(std::count(data.labels.begin(), data.labels.end(), 3), 30);
  TrainConfig cfg;
  const auto split = split_dataset(data, cfg);
  EXPECT_EQ(split.train.size() + split.probe_fit.size() + split.probe_eval.size(), 120u);
  std::vector<std::size_t> all(split.train);
  all.insert(all.end(), split.probe_fit.begin(), split.probe_fit.end());
  all.insert(all.end(), split.probe_eval.begin(), split.probe_eval.end());
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(all[i], i);
  spec.classes = 9;
  EXPECT_THROW(SyntheticDataset::gaussian_blobs(spec), ContractViolation);
}

TEST(Train, ZeroLearningRateKeepsParamsAndLoss) {
  BlobSpec spec;
  const auto data = SyntheticDataset::gaussian_blobs(spec);
  TrainConfig cfg;
  cfg.learning_rate = 0.0;
  cfg.epochs = 4;
  const auto init = EncoderParams::random(spec.dim, cfg.hidden_dim, cfg.embed_dim, cfg.temperature, 9);
  const auto r = train(data, cfg, init);
  EXPECT_EQ(r.params.flatten(), init.flatten());
  for (const auto& m : r.log) EXPECT_EQ(m.loss, r.log[0].loss);
}

TEST(Train, SeparableBlobsReachHighProbeAccuracy) {
  BlobSpec spec;
  spec.separation = 4.0;
  spec.spread = 0.5;
  const auto data = SyntheticDataset::gaussian_blobs(spec);
  TrainConfig cfg;
  cfg.tau_pos = 0.5;
  const auto r = train(data, cfg);
  ASSERT_EQ(r.log.size(), 200u);
  EXPECT_GT(r.log.back().probe_accuracy, 0.95);
}

TEST(Train, BclNotWorseThanBiasedOnFourBlobs) {
  BlobSpec spec;
  spec.classes = 4;
  const auto data = SyntheticDataset::gaussian_blobs(spec);
  TrainConfig cfg;
  cfg.beta = beta_from_classes(4);
  cfg.tau_pos = 0.25;
  const auto bcl = train(data, cfg);
  cfg.mode = LossMode::Biased;
  const auto biased = train(data, cfg);
  EXPECT_GE(bcl.log.back().probe_accuracy, biased.log.back().probe_accuracy - 0.01);
}

TEST(Train, Deterministic) {
  const auto data = SyntheticDataset::gaussian_blobs({});
  TrainConfig cfg;
  cfg.epochs = 5;
  const auto a = train(data, cfg);
  const auto b = train(data, cfg);
  EXPECT_EQ(a.params.flatten(), b.params.flatten());
  std::ostringstream sa, sb;
  write_metrics_csv(a.log, sa);
  write_metrics_csv(b.log, sb);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_TRUE(sa.str().starts_with("epoch,loss,alpha_hat,probe_accuracy\n"));
}

TEST(Train, DivergenceReportsEpoch) {
  const auto data = SyntheticDataset::gaussian_blobs({});
  TrainConfig cfg;
  cfg.learning_rate = 1e300;
  cfg.epochs = 3;
  try {
    train(data, cfg);
    FAIL();
  } catch (const TrainingDiverged& e) {
    EXPECT_EQ(e.epoch(), 0u);
  }
}

TEST(Checkpoint, RoundTrip) {
  const auto p = EncoderParams::random(3, 7, 4, 0.25, 11);
  const auto path = std::filesystem::temp_directory_path() / "bcl_ckpt.bin";
  save_checkpoint(p, path);
  const auto q = load_checkpoint(path);
  std::filesystem::remove(path);
  EXPECT_EQ(q.flatten(), p.flatten());
  EXPECT_EQ(q.temperature, 0.25);
  EXPECT_EQ(q.hidden_dim(), 7u);
  EXPECT_THROW(load_checkpoint("/nonexistent/ckpt"), std::runtime_error);
}
