#include "bcl/toy_trainer.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <ostream>
#include <string>

#include "bcl/estimators.hpp"
#include "bcl/rng.hpp"
#include "bcl/sim_io.hpp"
#include "bcl/simulation.hpp"

namespace bcl::toy {

namespace {

constexpr std::uint64_t kInitStream = 11;
constexpr std::uint64_t kBlobStream = 12;
constexpr std::uint64_t kSplitStream = 13;
constexpr std::uint64_t kViewStream = 14;
constexpr std::uint64_t kOrderStream = 15;

struct Forward {
  Eigen::VectorXd input;
  Eigen::VectorXd hidden;
  Eigen::VectorXd raw;  // pre-normalization output u
  Eigen::VectorXd z;
  double norm = 0.0;
};

Forward forward(const EncoderParams& p, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != p.input_dim()) {
    detail::contract("encode: input has dimension " + std::to_string(x.size()) + ", encoder expects " +
                     std::to_string(p.input_dim()));
  }
  Forward f;
  f.input = x;
  f.hidden = (p.w1 * x + p.b1).array().tanh().matrix();
  f.raw = p.w2 * f.hidden + p.b2;
  f.norm = f.raw.norm();
  if (!(f.norm > 0.0) || !std::isfinite(f.norm)) {
    throw NumericalError("encode: pre-normalization output has norm " + std::to_string(f.norm));
  }
  f.z = f.raw / (p.temperature * f.norm);
  return f;
}

void backward(const EncoderParams& p, const Forward& f, const Eigen::VectorXd& dz, EncoderGradient& g) {
  const Eigen::VectorXd unit = f.raw / f.norm;
  const Eigen::VectorXd du = (dz - unit * unit.dot(dz)) / (p.temperature * f.norm);
  g.w2.noalias() += du * f.hidden.transpose();
  g.b2 += du;
  const Eigen::VectorXd dpre = ((p.w2.transpose() * du).array() * (1.0 - f.hidden.array().square())).matrix();
  g.w1.noalias() += dpre * f.input.transpose();
  g.b1 += dpre;
}

void require_finite(const Eigen::VectorXd& v, const char* name) {
  if (!v.allFinite()) throw NumericalError(std::string("loss_and_grad: non-finite ") + name);
}

template <class Visit>
void visit_tensors(Visit&& visit, auto& w1, auto& b1, auto& w2, auto& b2) {
  visit(w1);
  visit(b1);
  visit(w2);
  visit(b2);
}

template <class T>
Eigen::VectorXd flatten_tensors(const T& t) {
  Eigen::VectorXd out(t.w1.size() + t.b1.size() + t.w2.size() + t.b2.size());
  Eigen::Index pos = 0;
  auto put = [&](const auto& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) out[pos++] = m(r, c);
    }
  };
  visit_tensors(put, t.w1, t.b1, t.w2, t.b2);
  return out;
}

std::vector<std::size_t> permutation(std::size_t n, CounterRng& rng) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(i));
    std::swap(idx[i - 1], idx[std::min(j, i - 1)]);
  }
  return idx;
}

Eigen::VectorXd noisy(const Eigen::VectorXd& x, double sd, CounterRng& rng) {
  Eigen::VectorXd out = x;
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] += sd * rng.normal();
  return out;
}

struct AnchorBatch {
  Eigen::VectorXd view;
  Eigen::VectorXd positive;
  std::vector<Eigen::VectorXd> negatives;
};

AnchorBatch make_anchor_batch(const SyntheticDataset& data, std::span<const std::size_t> train,
                              std::size_t anchor, const TrainConfig& cfg) {
  CounterRng rng(cfg.seed, {kViewStream, anchor});
  AnchorBatch b{noisy(data.points[anchor], cfg.augment_noise, rng),
                noisy(data.points[anchor], cfg.augment_noise, rng),
                {}};
  b.negatives.reserve(cfg.negatives);
  while (b.negatives.size() < cfg.negatives) {
    const auto k = std::min(train.size() - 1, static_cast<std::size_t>(rng.uniform() * static_cast<double>(train.size())));
    if (train[k] == anchor) continue;
    b.negatives.push_back(data.points[train[k]]);
  }
  return b;
}

Eigen::MatrixXd embed_all(const EncoderParams& p, const SyntheticDataset& data, std::span<const std::size_t> idx) {
  Eigen::MatrixXd z(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(p.output_dim()));
  for (std::size_t i = 0; i < idx.size(); ++i) z.row(static_cast<Eigen::Index>(i)) = encode(p, data.points[idx[i]]).transpose();
  return z;
}

}  // namespace

EncoderParams EncoderParams::random(std::size_t input_dim, std::size_t hidden_dim, std::size_t output_dim,
                                    double temperature, std::uint64_t seed) {
  if (input_dim == 0 || hidden_dim == 0 || output_dim == 0) detail::contract("encoder dimensions must be >= 1");
  if (!(temperature > 0.0)) detail::contract("encoder temperature must be > 0");
  const auto din = static_cast<Eigen::Index>(input_dim);
  const auto dh = static_cast<Eigen::Index>(hidden_dim);
  const auto dout = static_cast<Eigen::Index>(output_dim);
  EncoderParams p{Eigen::MatrixXd(dh, din), Eigen::VectorXd::Zero(dh), Eigen::MatrixXd(dout, dh),
                  Eigen::VectorXd::Zero(dout), temperature};
  CounterRng r1(seed, {kInitStream, 1});
  CounterRng r2(seed, {kInitStream, 2});
  const double s1 = 1.0 / std::sqrt(static_cast<double>(input_dim));
  const double s2 = 1.0 / std::sqrt(static_cast<double>(hidden_dim));
  for (Eigen::Index r = 0; r < dh; ++r) {
    for (Eigen::Index c = 0; c < din; ++c) p.w1(r, c) = s1 * r1.normal();
  }
  for (Eigen::Index r = 0; r < dout; ++r) {
    for (Eigen::Index c = 0; c < dh; ++c) p.w2(r, c) = s2 * r2.normal();
  }
  return p;
}

std::size_t EncoderParams::parameter_count() const {
  return static_cast<std::size_t>(w1.size() + b1.size() + w2.size() + b2.size());
}

Eigen::VectorXd EncoderParams::flatten() const { return flatten_tensors(*this); }

void EncoderParams::assign(const Eigen::VectorXd& flat) {
  if (static_cast<std::size_t>(flat.size()) != parameter_count()) {
    detail::contract("EncoderParams::assign: expected " + std::to_string(parameter_count()) + " values");
  }
  Eigen::Index pos = 0;
  auto take = [&](auto& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = flat[pos++];
    }
  };
  visit_tensors(take, w1, b1, w2, b2);
}

EncoderGradient EncoderGradient::zeros_like(const EncoderParams& p) {
  return {Eigen::MatrixXd::Zero(p.w1.rows(), p.w1.cols()), Eigen::VectorXd::Zero(p.b1.size()),
          Eigen::MatrixXd::Zero(p.w2.rows(), p.w2.cols()), Eigen::VectorXd::Zero(p.b2.size())};
}

Eigen::VectorXd EncoderGradient::flatten() const { return flatten_tensors(*this); }

EncoderGradient& EncoderGradient::operator+=(const EncoderGradient& o) {
  w1 += o.w1;
  b1 += o.b1;
  w2 += o.w2;
  b2 += o.b2;
  return *this;
}

EncoderGradient& EncoderGradient::operator*=(double s) {
  w1 *= s;
  b1 *= s;
  w2 *= s;
  b2 *= s;
  return *this;
}

Eigen::VectorXd encode(const EncoderParams& params, const Eigen::VectorXd& input) {
  return forward(params, input).z;
}

LossAndGrad loss_and_grad(const EncoderParams& params, const Eigen::VectorXd& anchor,
                          const Eigen::VectorXd& positive, std::span<const Eigen::VectorXd> negatives,
                          const WeightVector& weights) {
  if (negatives.empty()) detail::contract("loss_and_grad: need at least one negative");
  if (weights.size() != negatives.size()) detail::contract("loss_and_grad: one weight per negative required");

  const Forward fa = forward(params, anchor);
  const Forward fp = forward(params, positive);
  std::vector<Forward> fn;
  fn.reserve(negatives.size());
  for (const auto& x : negatives) fn.push_back(forward(params, x));
  require_finite(fa.z, "anchor embedding");
  require_finite(fp.z, "positive embedding");

  const double pos_score = std::exp(fa.z.dot(fp.z));
  std::vector<double> neg_scores(fn.size());
  for (std::size_t i = 0; i < fn.size(); ++i) neg_scores[i] = std::exp(fa.z.dot(fn[i].z));
  for (double s : neg_scores) {
    if (!std::isfinite(s)) throw NumericalError("loss_and_grad: non-finite negative score");
  }
  if (!std::isfinite(pos_score)) throw NumericalError("loss_and_grad: non-finite positive score");

  LossAndGrad out{contrastive_loss(ScoreBatch(pos_score, neg_scores), weights),
                  EncoderGradient::zeros_like(params), weights};

  double weighted = 0.0;
  for (std::size_t i = 0; i < neg_scores.size(); ++i) weighted += weights[i] * neg_scores[i];
  const double denom = pos_score + weighted;
  // dL/ds+ and dL/ds_i for s = dot products of embeddings.
  const double g_pos = pos_score / denom - 1.0;
  Eigen::VectorXd d_anchor = g_pos * fp.z;
  for (std::size_t i = 0; i < fn.size(); ++i) {
    const double g_i = weights[i] * neg_scores[i] / denom;
    d_anchor += g_i * fn[i].z;
    backward(params, fn[i], g_i * fa.z, out.grad);
  }
  backward(params, fp, g_pos * fa.z, out.grad);
  backward(params, fa, d_anchor, out.grad);
  require_finite(out.grad.flatten(), "gradient");
  return out;
}

LossAndGrad loss_and_grad(const EncoderParams& params, const Eigen::VectorXd& anchor,
                          const Eigen::VectorXd& positive, std::span<const Eigen::VectorXd> negatives,
                          const std::optional<MixtureParams>& mixture) {
  if (negatives.empty()) detail::contract("loss_and_grad: need at least one negative");
  if (!mixture) return loss_and_grad(params, anchor, positive, negatives, WeightVector::ones(negatives.size()));
  const Eigen::VectorXd za = encode(params, anchor);
  std::vector<double> neg_scores(negatives.size());
  for (std::size_t i = 0; i < negatives.size(); ++i) neg_scores[i] = std::exp(za.dot(encode(params, negatives[i])));
  return loss_and_grad(params, anchor, positive, negatives, weight_batch(neg_scores, *mixture));
}

SyntheticDataset SyntheticDataset::gaussian_blobs(const BlobSpec& spec) {
  if (spec.classes < 2) detail::contract("gaussian_blobs: need at least 2 classes");
  if (spec.dim == 0 || static_cast<std::size_t>(spec.classes) > 2 * spec.dim) {
    detail::contract("gaussian_blobs: classes must be <= 2 * dim");
  }
  if (spec.per_class < 2) detail::contract("gaussian_blobs: need at least 2 points per class");
  SyntheticDataset data;
  data.classes = spec.classes;
  const auto dim = static_cast<Eigen::Index>(spec.dim);
  for (int c = 0; c < spec.classes; ++c) {
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
    mean[c / 2] = (c % 2 == 0 ? 1.0 : -1.0) * spec.separation;
    for (std::size_t i = 0; i < spec.per_class; ++i) {
      CounterRng rng(spec.seed, {kBlobStream, static_cast<std::uint64_t>(c), i});
      data.points.push_back(noisy(mean, spec.spread, rng));
      data.labels.push_back(c);
    }
  }
  return data;
}

void TrainConfig::validate() const {
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) detail::contract("learning rate must be >= 0");
  if (negatives < 1) detail::contract("negatives must be >= 1");
  if (anchors_per_step < 1) detail::contract("anchors per step must be >= 1");
  if (!(augment_noise >= 0.0)) detail::contract("augmentation noise must be >= 0");
  if (!(temperature > 0.0)) detail::contract("temperature must be > 0");
  if (!(probe_fraction > 0.0 && probe_fraction < 1.0)) detail::contract("probe fraction must be in (0, 1)");
  if (hidden_dim < 1 || embed_dim < 1) detail::contract("encoder dimensions must be >= 1");
  if (mode == LossMode::Bcl) MixtureParams(0.5, beta, tau_pos);  // range checks
}

TrainingDiverged::TrainingDiverged(std::size_t epoch, const std::string& what)
    : NumericalError("training diverged at epoch " + std::to_string(epoch) + ": " + what), epoch_(epoch) {}

DataSplit split_dataset(const SyntheticDataset& data, const TrainConfig& config) {
  CounterRng rng(config.seed, {kSplitStream});
  const auto order = permutation(data.size(), rng);
  const auto probe_n = static_cast<std::size_t>(std::llround(config.probe_fraction * static_cast<double>(data.size())));
  if (probe_n < 4 || data.size() - probe_n < 2) detail::contract("dataset too small for the probe split");
  DataSplit split;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i < probe_n) {
      (i % 2 == 0 ? split.probe_fit : split.probe_eval).push_back(order[i]);
    } else {
      split.train.push_back(order[i]);
    }
  }
  std::sort(split.train.begin(), split.train.end());
  return split;
}

double probe_alpha(const EncoderParams& params, const SyntheticDataset& data, std::span<const std::size_t> indices) {
  const Eigen::MatrixXd z = embed_all(params, data, indices);
  double total = 0.0;
  std::size_t anchors = 0;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    std::vector<double> pos, neg;
    for (std::size_t j = 0; j < indices.size(); ++j) {
      if (i == j) continue;
      const double s = z.row(static_cast<Eigen::Index>(i)).dot(z.row(static_cast<Eigen::Index>(j)));
      (data.labels[indices[i]] == data.labels[indices[j]] ? pos : neg).push_back(s);
    }
    if (pos.empty() || neg.empty()) continue;
    total += sim::estimate_alpha_auc(pos, neg);
    ++anchors;
  }
  if (anchors == 0) detail::contract("probe_alpha: probe slice needs two classes with >= 2 points");
  return total / static_cast<double>(anchors);
}

double linear_probe_accuracy(const EncoderParams& params, const SyntheticDataset& data,
                             std::span<const std::size_t> fit, std::span<const std::size_t> eval) {
  if (fit.empty() || eval.empty()) detail::contract("linear probe needs non-empty fit and eval slices");
  const Eigen::MatrixXd zf = embed_all(params, data, fit);
  const Eigen::MatrixXd ze = embed_all(params, data, eval);
  const Eigen::Index classes = data.classes;
  const Eigen::Index n = zf.rows();
  Eigen::MatrixXd onehot = Eigen::MatrixXd::Zero(n, classes);
  for (Eigen::Index i = 0; i < n; ++i) onehot(i, data.labels[fit[static_cast<std::size_t>(i)]]) = 1.0;

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(zf.cols(), classes);
  Eigen::RowVectorXd b = Eigen::RowVectorXd::Zero(classes);
  constexpr int kIterations = 300;
  constexpr double kStep = 0.5;
  for (int it = 0; it < kIterations; ++it) {
    Eigen::MatrixXd logits = (zf * w).rowwise() + b;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double mx = logits.row(i).maxCoeff();
      logits.row(i) = (logits.row(i).array() - mx).exp().matrix();
      logits.row(i) /= logits.row(i).sum();
    }
    const Eigen::MatrixXd residual = (logits - onehot) / static_cast<double>(n);
    w -= kStep * zf.transpose() * residual;
    b -= kStep * residual.colwise().sum();
  }
  const Eigen::MatrixXd scores = (ze * w).rowwise() + b;
  std::size_t correct = 0;
  for (Eigen::Index i = 0; i < ze.rows(); ++i) {
    Eigen::Index best = 0;
    scores.row(i).maxCoeff(&best);
    if (best == data.labels[eval[static_cast<std::size_t>(i)]]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(ze.rows());
}

TrainResult train(const SyntheticDataset& data, const TrainConfig& cfg, std::optional<EncoderParams> init) {
  cfg.validate();
  if (data.points.empty()) detail::contract("train: empty dataset");
  const DataSplit split = split_dataset(data, cfg);
  TrainResult result{init ? std::move(*init)
                          : EncoderParams::random(static_cast<std::size_t>(data.points[0].size()), cfg.hidden_dim,
                                                  cfg.embed_dim, cfg.temperature, cfg.seed),
                     {}};
  auto& params = result.params;

  std::vector<AnchorBatch> batches;
  batches.reserve(split.train.size());
  for (std::size_t a : split.train) batches.push_back(make_anchor_batch(data, split.train, a, cfg));

  std::vector<std::size_t> probe_all(split.probe_fit);
  probe_all.insert(probe_all.end(), split.probe_eval.begin(), split.probe_eval.end());
  double alpha_hat = probe_alpha(params, data, probe_all);

  std::vector<double> losses(batches.size());
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::optional<MixtureParams> mixture;
    if (cfg.mode == LossMode::Bcl) mixture = MixtureParams(std::clamp(alpha_hat, 0.5, 1.0), cfg.beta, cfg.tau_pos);

    CounterRng order_rng(cfg.seed, {kOrderStream, epoch});
    const auto order = permutation(batches.size(), order_rng);
    for (std::size_t start = 0; start < order.size(); start += cfg.anchors_per_step) {
      const std::size_t stop = std::min(order.size(), start + cfg.anchors_per_step);
      EncoderGradient step = EncoderGradient::zeros_like(params);
      for (std::size_t k = start; k < stop; ++k) {
        const auto& b = batches[order[k]];
        LossAndGrad lg;
        try {
          lg = loss_and_grad(params, b.view, b.positive, b.negatives, mixture);
        } catch (const NumericalError& e) {
          throw TrainingDiverged(epoch, e.what());
        }
        if (!std::isfinite(lg.loss)) throw TrainingDiverged(epoch, "non-finite loss");
        losses[order[k]] = lg.loss;
        step += lg.grad;
      }
      step *= -cfg.learning_rate / static_cast<double>(stop - start);
      params.w1 += step.w1;
      params.b1 += step.b1;
      params.w2 += step.w2;
      params.b2 += step.b2;
    }
    if (!params.flatten().allFinite()) throw TrainingDiverged(epoch, "non-finite parameters");

    double total = 0.0;
    for (double l : losses) total += l;
    alpha_hat = probe_alpha(params, data, probe_all);
    result.log.push_back({epoch, total / static_cast<double>(losses.size()), alpha_hat,
                          linear_probe_accuracy(params, data, split.probe_fit, split.probe_eval)});
  }
  return result;
}

void write_metrics_csv(std::span<const EpochMetrics> log, std::ostream& out) {
  out << "epoch,loss,alpha_hat,probe_accuracy\n";
  for (const auto& m : log) {
    out << m.epoch << ',' << sim::format_double(m.loss) << ',' << sim::format_double(m.alpha_hat) << ','
        << sim::format_double(m.probe_accuracy) << '\n';
  }
}

namespace {

constexpr char kMagic[4] = {'B', 'C', 'L', 'E'};

template <class T>
void put(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& in, const std::filesystem::path& path) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) {
    throw std::runtime_error("truncated checkpoint '" + path.string() + "'");
  }
  return v;
}

}  // namespace

void save_checkpoint(const EncoderParams& p, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out.write(kMagic, sizeof kMagic);
  put<std::uint64_t>(out, p.input_dim());
  put<std::uint64_t>(out, p.hidden_dim());
  put<std::uint64_t>(out, p.output_dim());
  put<double>(out, p.temperature);
  const Eigen::VectorXd flat = p.flatten();
  for (Eigen::Index i = 0; i < flat.size(); ++i) put<double>(out, flat[i]);
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

EncoderParams load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error("'" + path.string() + "' is not an encoder checkpoint");
  }
  const auto din = get<std::uint64_t>(in, path);
  const auto dh = get<std::uint64_t>(in, path);
  const auto dout = get<std::uint64_t>(in, path);
  const auto t = get<double>(in, path);
  if (din == 0 || dh == 0 || dout == 0 || din > (1u << 20) || dh > (1u << 20) || dout > (1u << 20)) {
    throw std::runtime_error("implausible dimensions in checkpoint '" + path.string() + "'");
  }
  EncoderParams p = EncoderParams::random(din, dh, dout, t, 0);
  Eigen::VectorXd flat(static_cast<Eigen::Index>(p.parameter_count()));
  for (Eigen::Index i = 0; i < flat.size(); ++i) flat[i] = get<double>(in, path);
  p.assign(flat);
  return p;
}

}  // namespace bcl::toy
