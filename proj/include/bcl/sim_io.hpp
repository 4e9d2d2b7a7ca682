#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "bcl/simulation.hpp"

namespace bcl::sim {

nlohmann::json to_json(const ProposalDist& proposal);
ProposalDist proposal_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SimConfig& config);
/// Missing keys keep the values already in `base`.
SimConfig config_from_json(const nlohmann::json& j, SimConfig base = {});

/// Columns: anchor_id,sample_id,raw_score,mapped_score,label (17 significant digits).
void write_batch_csv(const SimBatch& batch, std::ostream& out);
void write_batch_csv(const SimBatch& batch, const std::filesystem::path& path);

/// `<csv path>.json` next to the CSV, echoing the full SimConfig.
std::filesystem::path sidecar_path(const std::filesystem::path& csv_path);
void write_sidecar(const SimConfig& config, const std::filesystem::path& path);

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

}  // namespace bcl::sim
