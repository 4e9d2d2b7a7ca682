#include "bcl/cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bcl/ecdf.hpp"
#include "bcl/errors.hpp"
#include "bcl/estimators.hpp"
#include "bcl/harness.hpp"
#include "bcl/parallel.hpp"
#include "bcl/report_io.hpp"
#include "bcl/sim_io.hpp"
#include "bcl/simulation.hpp"
#include "bcl/toy_trainer.hpp"
#include "bcl/weights.hpp"

namespace bcl::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kOutputDirEnv = "BCL_OUTPUT_DIR";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void check_range(const std::string& flag, double v, double lo, double hi, bool lo_open = false,
                 bool hi_open = false) {
  const bool ok = std::isfinite(v) && (lo_open ? v > lo : v >= lo) && (hi_open ? v < hi : v <= hi);
  if (!ok) {
    throw UsageError(flag + " must be in " + (lo_open ? "(" : "[") + num(lo) + ", " + num(hi) + (hi_open ? ")" : "]") +
                     ", got " + num(v));
  }
}

void check_min(const std::string& flag, std::int64_t v, std::int64_t lo) {
  if (v < lo) throw UsageError(flag + " must be an integer >= " + std::to_string(lo) + ", got " + std::to_string(v));
}

void check_positive(const std::string& flag, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) throw UsageError(flag + " must be > 0, got " + num(v));
}

/// Options that may also come from a --config JSON file. A flag given on the
/// command line always wins over the file.
class FlagTable {
 public:
  explicit FlagTable(CLI::App* app) : app_(app) {}

  template <class T>
  CLI::Option* add(const std::string& flag, const std::string& json_key, T& var, const std::string& desc) {
    CLI::Option* opt = app_->add_option(flag, var, desc)->capture_default_str();
    fillers_.push_back([opt, json_key, &var](const json& j) {
      const json::json_pointer ptr(json_key);
      if (opt->count() == 0 && j.contains(ptr)) var = j.at(ptr).get<T>();
    });
    return opt;
  }

  void fill_from(const json& j) const {
    for (const auto& f : fillers_) f(j);
  }

  CLI::App* app() const { return app_; }

 private:
  CLI::App* app_;
  std::vector<std::function<void(const json&)>> fillers_;
};

struct CommonFlags {
  std::string config;
  std::string out;
  std::string format;
  int threads = 0;
};

void add_common(CLI::App* app, CommonFlags& c, const std::string& default_format, const std::string& formats) {
  app->add_option("--config", c.config, "JSON file with flag values (keys as in the simulate sidecar)");
  app->add_option("--out", c.out, "output path; relative paths resolve under $" + std::string(kOutputDirEnv));
  app->add_option("--threads", c.threads, "worker threads, 0 = all cores; results do not depend on it")
      ->capture_default_str();
  if (!default_format.empty()) {
    c.format = default_format;
    app->add_option("--format", c.format, "output format: " + formats)->capture_default_str();
  }
}

struct MixtureFlags {
  double alpha = 0.9;
  double beta = 0.5;
  double tau_pos = 0.1;
  int beta_classes = 0;
  CLI::Option* beta_opt = nullptr;
  CLI::Option* classes_opt = nullptr;
};

void add_mixture(FlagTable& t, MixtureFlags& f, bool with_alpha = true) {
  if (with_alpha) t.add("--alpha", "/alpha", f.alpha, "encoder quality alpha in [0.5, 1]");
  f.beta_opt = t.add("--beta", "/beta", f.beta, "sampling parameter beta in [0.5, 1]");
  f.classes_opt = t.app()->add_option("--beta-from-classes", f.beta_classes,
                                      "set beta = 1 - 1/C for C >= 2 balanced classes");
  f.classes_opt->excludes(f.beta_opt);
  t.add("--tau-pos", "/tau_pos", f.tau_pos, "class prior tau+ in (0, 1)");
}

MixtureParams build_mixture(const MixtureFlags& f, bool with_alpha = true) {
  if (with_alpha) check_range("--alpha", f.alpha, 0.5, 1.0);
  double beta = f.beta;
  if (f.classes_opt->count() > 0) {
    check_min("--beta-from-classes", f.beta_classes, 2);
    beta = beta_from_classes(f.beta_classes);
  }
  check_range("--beta", beta, 0.5, 1.0);
  check_range("--tau-pos", f.tau_pos, 0.0, 1.0, true, true);
  return MixtureParams(with_alpha ? f.alpha : 0.5, beta, f.tau_pos);
}

struct SimFlags {
  MixtureFlags mix;
  std::string preset = "baseline";
  std::string proposal = "uniform";
  double lo = -0.5;
  double hi = 0.5;
  double gamma = 0.1;
  double mean = 0.0;
  double sd = 1.0;
  double t = 0.5;
  std::int64_t m = 1000;
  std::int64_t n = 64;
  std::uint64_t seed = 42;
  std::vector<CLI::Option*> opts;
};

void add_sim(FlagTable& t, SimFlags& f) {
  add_mixture(t, f.mix);
  t.app()
      ->add_option("--preset", f.preset,
                   "baseline (U(-0.5,0.5), t=0.5, M=1000, N=64) or distribution (N(0,1), t=2, M=1, N=20000); "
                   "explicit flags override")
      ->check(CLI::IsMember({"baseline", "distribution"}))
      ->capture_default_str();
  f.opts = {
      t.add("--proposal", "/proposal/kind", f.proposal, "proposal family: uniform or normal"),
      t.add("--lo", "/proposal/a", f.lo, "uniform proposal lower bound a < b, inside [-1/t^2, 1/t^2]"),
      t.add("--hi", "/proposal/b", f.hi, "uniform proposal upper bound b"),
      t.add("--gamma", "/proposal/gamma", f.gamma, "uniform slide coefficient gamma in [0, 1]"),
      t.add("--mean", "/proposal/mean", f.mean, "normal proposal mean"),
      t.add("--sd", "/proposal/sd", f.sd, "normal proposal sd > 0"),
      t.add("--t", "/t", f.t, "temperature t > 0"),
      t.add("--m", "/m", f.m, "anchors M >= 1"),
      t.add("--n", "/n", f.n, "negatives per anchor N >= 1"),
      t.add("--seed", "/seed", f.seed, "master seed"),
  };
}

void apply_preset(SimFlags& f) {
  if (f.preset != "distribution") return;
  // Only touches flags the user left alone; a config file is applied afterwards.
  auto unset = [&](std::size_t i) { return f.opts[i]->count() == 0; };
  if (unset(0)) f.proposal = "normal";
  if (unset(4)) f.mean = 0.0;
  if (unset(5)) f.sd = 1.0;
  if (unset(6)) f.t = 2.0;
  if (unset(7)) f.m = 1;
  if (unset(8)) f.n = 20000;
}

sim::SimConfig build_sim(const SimFlags& f) {
  sim::SimConfig cfg;
  cfg.mixture = build_mixture(f.mix);
  check_positive("--t", f.t);
  check_min("--m", f.m, 1);
  check_min("--n", f.n, 1);
  if (f.proposal == "uniform") {
    check_range("--gamma", f.gamma, 0.0, 1.0);
    const double limit = 1.0 / (f.t * f.t);
    if (!(f.lo < f.hi)) throw UsageError("--lo must be < --hi, got [" + num(f.lo) + ", " + num(f.hi) + "]");
    check_range("--lo", f.lo, -limit, limit);
    check_range("--hi", f.hi, -limit, limit);
    cfg.proposal = sim::ProposalDist::uniform(f.lo, f.hi, f.gamma);
  } else if (f.proposal == "normal") {
    if (!std::isfinite(f.mean)) throw UsageError("--mean must be finite");
    check_positive("--sd", f.sd);
    cfg.proposal = sim::ProposalDist::normal(f.mean, f.sd);
  } else {
    throw UsageError("--proposal must be uniform or normal, got '" + f.proposal + "'");
  }
  cfg.t = f.t;
  cfg.anchors = static_cast<std::size_t>(f.m);
  cfg.negatives = static_cast<std::size_t>(f.n);
  cfg.seed = f.seed;
  cfg.validate();
  return cfg;
}

void load_config(const CommonFlags& c, const FlagTable& table) {
  if (c.config.empty()) return;
  std::ifstream in(c.config, std::ios::binary);
  if (!in) throw UsageError("--config: cannot open '" + c.config + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("--config: '" + c.config + "' is not valid JSON: " + e.what());
  }
  // A simulate sidecar nests the settings under "config".
  if (j.contains("config") && j["config"].is_object()) j = j["config"];
  try {
    table.fill_from(j);
  } catch (const json::exception& e) {
    throw UsageError("--config: bad value in '" + c.config + "': " + e.what());
  }
}

fs::path resolve_out(const std::string& out, const std::string& fallback) {
  const char* env = std::getenv(kOutputDirEnv);
  const fs::path base = env && *env ? fs::path(env) : fs::path();
  fs::path p = out.empty() ? base / fallback : fs::path(out);
  if (!out.empty() && p.is_relative() && !base.empty()) p = base / p;
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  return p;
}

std::string ext_for(harness::ReportFormat f) { return f == harness::ReportFormat::Json ? ".json" : ".csv"; }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

/// Writes to --out when given, otherwise to stdout.
void emit(const CommonFlags& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
  } else {
    write_text(resolve_out(c.out, ""), text);
  }
}

PlottingPosition parse_plotting(const std::string& s) {
  if (s == "inclusive") return PlottingPosition::Inclusive;
  if (s == "midrank") return PlottingPosition::MidRank;
  throw UsageError("--plotting must be inclusive or midrank, got '" + s + "'");
}

void check_scores(const std::string& flag, const std::vector<double>& v) {
  if (v.empty()) throw UsageError(flag + " needs at least one value");
  for (double x : v) {
    if (!(x > 0.0) || !std::isfinite(x)) throw UsageError(flag + " values must be finite and > 0, got " + num(x));
  }
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Bayesian contrastive loss: importance weights, simulation and estimator experiments", "bcl"};
  app.set_version_flag("--version", BCL_VERSION);
  app.require_subcommand(1);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "draw labeled anchor/negative scores to CSV plus a JSON sidecar");
  CommonFlags sim_c;
  SimFlags sim_f;
  FlagTable sim_t(simulate);
  add_sim(sim_t, sim_f);
  add_common(simulate, sim_c, "", "");

  // weights
  auto* weights = app.add_subcommand("weights", "importance weights for one anchor's negative scores");
  CommonFlags w_c;
  MixtureFlags w_m;
  std::vector<double> w_scores;
  std::string w_plot = "inclusive";
  FlagTable w_t(weights);
  add_mixture(w_t, w_m);
  w_t.add("--scores", "/scores", w_scores, "comma-separated positive similarity scores exp(s/t)")
      ->delimiter(',')
      ->required();
  w_t.add("--plotting", "/plotting", w_plot, "eCDF plotting position: inclusive or midrank");
  add_common(weights, w_c, "", "");

  // loss
  auto* loss = app.add_subcommand("loss", "BCL and biased contrastive loss for one anchor");
  CommonFlags l_c;
  MixtureFlags l_m;
  std::vector<double> l_scores;
  double l_pos = 0.0;
  FlagTable l_t(loss);
  add_mixture(l_t, l_m);
  l_t.add("--pos", "/pos", l_pos, "positive score x+ > 0")->required();
  l_t.add("--scores", "/scores", l_scores, "comma-separated negative scores > 0")->delimiter(',')->required();
  add_common(loss, l_c, "", "");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "estimator MSE (or mean values) across one parameter axis");
  CommonFlags s_c;
  SimFlags s_f;
  std::string s_axis = "alpha";
  std::vector<double> s_values;
  std::int64_t s_reps = 20;
  std::int64_t s_dcl_k = 10;
  std::string s_kind = "mse";
  FlagTable s_t(sweep);
  add_sim(s_t, s_f);
  s_t.add("--axis", "/axis", s_axis, "swept parameter: alpha, n, tau_pos, gamma, t or m");
  s_t.add("--values", "/values", s_values, "comma-separated axis values")->delimiter(',')->required();
  s_t.add("--reps", "/reps", s_reps, "repetitions R >= 1 (seeds derived from --seed)");
  s_t.add("--dcl-positives", "/dcl_positives", s_dcl_k, "positives K >= 1 for the DCL estimator");
  s_t.add("--kind", "/kind", s_kind, "mse or mean");
  add_common(sweep, s_c, "csv", "csv, json or long");

  // lemmas
  auto* lemmas = app.add_subcommand("lemmas", "posterior identity, consistency rate and loss-bound checks");
  CommonFlags m_c;
  SimFlags m_f;
  FlagTable m_t(lemmas);
  add_sim(m_t, m_f);
  add_common(lemmas, m_c, "json", "json or csv");

  // bias-curve
  auto* bias = app.add_subcommand("bias-curve", "p+/p- ratio of a fixed-theta estimate across xhat");
  CommonFlags b_c;
  double b_theta = 1.0;
  double b_tau = 0.1;
  double b_xmin = 0.0;
  double b_xmax = 20.0;
  std::int64_t b_points = 201;
  FlagTable b_t(bias);
  b_t.add("--theta-mean", "/theta_mean", b_theta, "mean negative score m > 0");
  b_t.add("--tau-pos", "/tau_pos", b_tau, "class prior tau+ in (0, 1)");
  b_t.add("--xmin", "/xmin", b_xmin, "grid start");
  b_t.add("--xmax", "/xmax", b_xmax, "grid end > xmin");
  b_t.add("--points", "/points", b_points, "grid size >= 2");
  add_common(bias, b_c, "", "");

  // train
  auto* train = app.add_subcommand("train", "toy encoder trained with the biased or BCL loss");
  CommonFlags t_c;
  MixtureFlags t_m;
  t_m.tau_pos = 0.5;
  std::string t_mode = "bcl";
  std::int64_t t_epochs = 200;
  double t_lr = 0.05;
  std::int64_t t_negs = 16;
  std::int64_t t_step = 8;
  std::int64_t t_classes = 2;
  std::int64_t t_per_class = 60;
  std::int64_t t_dim = 4;
  double t_temp = 0.5;
  double t_noise = 1.0;
  std::uint64_t t_seed = 1;
  std::string t_ckpt;
  std::string t_init;
  FlagTable t_t(train);
  t_t.add("--mode", "/mode", t_mode, "loss: bcl or biased");
  add_mixture(t_t, t_m, false);
  t_t.add("--epochs", "/epochs", t_epochs, "epochs >= 0");
  t_t.add("--lr", "/lr", t_lr, "SGD learning rate >= 0");
  t_t.add("--negatives", "/negatives", t_negs, "negatives per anchor >= 1");
  t_t.add("--anchors-per-step", "/anchors_per_step", t_step, "anchors per SGD step >= 1");
  t_t.add("--classes", "/classes", t_classes, "latent classes in [2, 2*dim]");
  t_t.add("--per-class", "/per_class", t_per_class, "points per class >= 2");
  t_t.add("--dim", "/dim", t_dim, "input dimension >= 1");
  t_t.add("--t", "/t", t_temp, "temperature t > 0");
  t_t.add("--augment-noise", "/augment_noise", t_noise, "sd of the Gaussian view noise >= 0");
  t_t.add("--seed", "/seed", t_seed, "seed for data, init and batches");
  t_t.add("--checkpoint", "/checkpoint", t_ckpt, "write final encoder weights here");
  t_t.add("--init", "/init", t_init, "start from this checkpoint");
  add_common(train, t_c, "", "");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  int phase = 2;  // contract failures before work starts are usage errors
  try {
    if (simulate->parsed()) {
      apply_preset(sim_f);
      load_config(sim_c, sim_t);
      const auto cfg = build_sim(sim_f);
      check_min("--threads", sim_c.threads, 0);
      const ScopedThreadCount threads(sim_c.threads);
      const fs::path out = resolve_out(sim_c.out, "sim.csv");
      phase = 1;
      const auto batch = sim::generate_batch(cfg);
      sim::write_batch_csv(batch, out);
      sim::write_sidecar(cfg, sim::sidecar_path(out));
      std::cout << "wrote " << batch.total_samples() << " rows to " << out.string() << '\n';
    } else if (weights->parsed()) {
      load_config(w_c, w_t);
      const auto params = build_mixture(w_m);
      check_scores("--scores", w_scores);
      const auto pos = parse_plotting(w_plot);
      phase = 1;
      const auto ecdf = Ecdf::build(w_scores);
      const auto w = weight_batch(w_scores, ecdf, params, pos);
      std::ostringstream os;
      os << "score,ecdf,weight\n";
      for (std::size_t i = 0; i < w_scores.size(); ++i) {
        os << sim::format_double(w_scores[i]) << ',' << sim::format_double(ecdf.eval(w_scores[i], pos)) << ','
           << sim::format_double(w[i]) << '\n';
      }
      emit(w_c, os.str());
    } else if (loss->parsed()) {
      load_config(l_c, l_t);
      const auto params = build_mixture(l_m);
      check_scores("--scores", l_scores);
      check_scores("--pos", {l_pos});
      phase = 1;
      const ScoreBatch batch(l_pos, l_scores);
      const double bcl = contrastive_loss(batch, weight_batch(l_scores, params));
      const double biased = contrastive_loss(batch, WeightVector::ones(l_scores.size()));
      emit(l_c, "loss_bcl,loss_biased\n" + sim::format_double(bcl) + ',' + sim::format_double(biased) + '\n');
    } else if (sweep->parsed()) {
      apply_preset(s_f);
      load_config(s_c, s_t);
      harness::SweepGrid grid;
      grid.base = build_sim(s_f);
      grid.axis = harness::parse_axis(s_axis);
      grid.values = s_values;
      check_min("--reps", s_reps, 1);
      check_min("--dcl-positives", s_dcl_k, 1);
      check_min("--threads", s_c.threads, 0);
      grid.repetitions = static_cast<std::size_t>(s_reps);
      grid.dcl_positives = static_cast<std::size_t>(s_dcl_k);
      grid.seed = grid.base.seed;
      if (s_kind != "mse" && s_kind != "mean") throw UsageError("--kind must be mse or mean, got '" + s_kind + "'");
      grid.validate();
      const auto format = harness::parse_format(s_c.format);
      const ScopedThreadCount threads(s_c.threads);
      const fs::path out = resolve_out(s_c.out, "sweep" + ext_for(format));
      phase = 1;
      const auto report = s_kind == "mse" ? harness::run_mse_sweep(grid) : harness::run_mean_values(grid);
      harness::export_report(report, format, out);
      std::cout << "wrote " << report.rows.size() << " grid points to " << out.string() << '\n';
    } else if (lemmas->parsed()) {
      apply_preset(m_f);
      load_config(m_c, m_t);
      const auto cfg = build_sim(m_f);
      if (cfg.mixture.beta() != 0.5) throw UsageError("--beta must be 0.5 for the lemma checks");
      check_min("--threads", m_c.threads, 0);
      const auto format = harness::parse_format(m_c.format);
      if (format == harness::ReportFormat::LongCsv) throw UsageError("--format must be json or csv for lemmas");
      const ScopedThreadCount threads(m_c.threads);
      const fs::path out = resolve_out(m_c.out, "lemmas" + ext_for(format));
      phase = 1;
      const auto report = harness::run_lemma_suite(cfg);
      harness::export_report(report, format, out);
      for (const auto& c : report.checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
      }
    } else if (bias->parsed()) {
      load_config(b_c, b_t);
      check_positive("--theta-mean", b_theta);
      check_range("--tau-pos", b_tau, 0.0, 1.0, true, true);
      check_min("--points", b_points, 2);
      if (!(b_xmax > b_xmin) || !std::isfinite(b_xmin) || !std::isfinite(b_xmax)) {
        throw UsageError("--xmax must be > --xmin");
      }
      const fs::path out = resolve_out(b_c.out, "bias_curve.csv");
      phase = 1;
      std::vector<double> grid(static_cast<std::size_t>(b_points));
      for (std::size_t i = 0; i < grid.size(); ++i) {
        grid[i] = b_xmin + (b_xmax - b_xmin) * static_cast<double>(i) / static_cast<double>(grid.size() - 1);
      }
      const auto curve = harness::bias_gap_curve(b_theta, b_tau, grid);
      std::ostringstream os;
      harness::write_bias_curve_csv(curve, os);
      write_text(out, os.str());
      std::cout << "pole at xhat = " << sim::format_double(curve.pole) << (curve.crosses_pole ? " (inside grid)" : "")
                << "; wrote " << out.string() << '\n';
    } else if (train->parsed()) {
      load_config(t_c, t_t);
      toy::TrainConfig cfg;
      if (t_mode != "bcl" && t_mode != "biased") throw UsageError("--mode must be bcl or biased, got '" + t_mode + "'");
      cfg.mode = t_mode == "bcl" ? toy::LossMode::Bcl : toy::LossMode::Biased;
      const auto mix = build_mixture(t_m, false);
      cfg.beta = mix.beta();
      cfg.tau_pos = mix.tau_pos();
      check_min("--epochs", t_epochs, 0);
      if (!(t_lr >= 0.0) || !std::isfinite(t_lr)) throw UsageError("--lr must be >= 0, got " + num(t_lr));
      check_min("--negatives", t_negs, 1);
      check_min("--anchors-per-step", t_step, 1);
      check_min("--dim", t_dim, 1);
      check_min("--per-class", t_per_class, 2);
      check_range("--classes", static_cast<double>(t_classes), 2.0, 2.0 * static_cast<double>(t_dim));
      check_positive("--t", t_temp);
      if (!(t_noise >= 0.0) || !std::isfinite(t_noise)) throw UsageError("--augment-noise must be >= 0");
      cfg.epochs = static_cast<std::size_t>(t_epochs);
      cfg.learning_rate = t_lr;
      cfg.negatives = static_cast<std::size_t>(t_negs);
      cfg.anchors_per_step = static_cast<std::size_t>(t_step);
      cfg.temperature = t_temp;
      cfg.augment_noise = t_noise;
      cfg.seed = t_seed;
      toy::BlobSpec spec;
      spec.classes = static_cast<int>(t_classes);
      spec.per_class = static_cast<std::size_t>(t_per_class);
      spec.dim = static_cast<std::size_t>(t_dim);
      spec.seed = t_seed;
      const fs::path out = resolve_out(t_c.out, "train_metrics.csv");
      phase = 1;
      std::optional<toy::EncoderParams> init;
      if (!t_init.empty()) init = toy::load_checkpoint(t_init);
      const auto data = toy::SyntheticDataset::gaussian_blobs(spec);
      const auto result = toy::train(data, cfg, std::move(init));
      std::ostringstream os;
      toy::write_metrics_csv(result.log, os);
      write_text(out, os.str());
      if (!t_ckpt.empty()) toy::save_checkpoint(result.params, resolve_out(t_ckpt, ""));
      if (!result.log.empty()) {
        const auto& last = result.log.back();
        std::cout << "epoch " << last.epoch << " loss " << sim::format_double(last.loss) << " alpha_hat "
                  << sim::format_double(last.alpha_hat) << " probe_accuracy "
                  << sim::format_double(last.probe_accuracy) << '\n';
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ContractViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return phase;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace bcl::cli
