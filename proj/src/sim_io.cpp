#include "bcl/sim_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "bcl/errors.hpp"

namespace bcl::sim {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json(const ProposalDist& proposal) {
  if (proposal.kind() == ProposalDist::Kind::Normal) {
    return {{"kind", "normal"}, {"mean", proposal.mean()}, {"sd", proposal.sd()}};
  }
  return {{"kind", "uniform"}, {"a", proposal.lower()}, {"b", proposal.upper()}, {"gamma", proposal.gamma()}};
}

ProposalDist proposal_from_json(const json& j) {
  const std::string kind = j.value("kind", "uniform");
  if (kind == "normal") return ProposalDist::normal(j.value("mean", 0.0), j.value("sd", 1.0));
  if (kind == "uniform") {
    return ProposalDist::uniform(j.value("a", -0.5), j.value("b", 0.5), j.value("gamma", 0.0));
  }
  detail::contract("proposal kind must be 'normal' or 'uniform', got '" + kind + "'");
}

json to_json(const SimConfig& c) {
  return {{"alpha", c.mixture.alpha()},
          {"beta", c.mixture.beta()},
          {"tau_pos", c.mixture.tau_pos()},
          {"proposal", to_json(c.proposal)},
          {"t", c.t},
          {"m", c.anchors},
          {"n", c.negatives},
          {"seed", c.seed}};
}

SimConfig config_from_json(const json& j, SimConfig base) {
  base.mixture = MixtureParams(j.value("alpha", base.mixture.alpha()), j.value("beta", base.mixture.beta()),
                               j.value("tau_pos", base.mixture.tau_pos()));
  if (j.contains("proposal")) base.proposal = proposal_from_json(j.at("proposal"));
  base.t = j.value("t", base.t);
  base.anchors = j.value("m", base.anchors);
  base.negatives = j.value("n", base.negatives);
  base.seed = j.value("seed", base.seed);
  return base;
}

void write_batch_csv(const SimBatch& batch, std::ostream& out) {
  out << "anchor_id,sample_id,raw_score,mapped_score,label\n";
  for (std::size_t a = 0; a < batch.anchors.size(); ++a) {
    const auto& samples = batch.anchors[a].samples;
    for (std::size_t s = 0; s < samples.size(); ++s) {
      out << a << ',' << s << ',' << format_double(samples[s].raw) << ','
          << format_double(samples[s].mapped) << ',' << to_string(samples[s].label) << '\n';
    }
  }
}

void write_batch_csv(const SimBatch& batch, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_batch_csv(batch, out);
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
  return std::filesystem::path(csv_path.string() + ".json");
}

void write_sidecar(const SimConfig& config, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  json j = {{"version", BCL_VERSION}, {"config", to_json(config)}};
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace bcl::sim
