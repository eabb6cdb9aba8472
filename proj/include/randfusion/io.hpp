#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "randfusion/angles.hpp"
#include "randfusion/bounds.hpp"
#include "randfusion/frame.hpp"
#include "randfusion/montecarlo.hpp"

namespace randfusion::io {

using nlohmann::json;

// Frame file: {"dim": N, "weights": [K], "subspaces": [K][s][N]} where each
// subspace is listed as its s basis vectors.
json frame_to_json(const FusionFrame& frame);
/// Throws ParseError on schema violations and NotOrthonormal naming the index.
FusionFrame frame_from_json(const json& doc);

FusionFrame load_frame(const std::filesystem::path& path);
void save_frame(const FusionFrame& frame, const std::filesystem::path& path);

// Experiment config: {"dim", "subspace_dim", "count", "delta", "trials",
// "seed", optional "weights", optional "outputs"}.
ExperimentConfig config_from_json(const json& doc);
json config_to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::filesystem::path& path);

json frame_bounds_to_json(const FrameBoundsReport& report);
/// Pair table included when `include_table`.
json angle_report_to_json(const AngleReport& report, bool include_table);
json bound_set_to_json(const BoundSet& bounds);
json aggregate_to_json(const AggregateReport& report);
json chi2_to_json(const Chi2Report& report);

/// Shortest round-trip decimal form; "inf", "-inf", "nan" for non-finite.
std::string format_double(double value);

inline constexpr const char* kTrialCsvHeader =
    "trial,eps_tight,frame_lower,frame_upper,hs_min,hs_max,hs_mean,welch_violated,window_pass";

void write_trial_csv(std::ostream& out, const std::vector<TrialResult>& trials);
/// Rows `j,l,tr,normalized` for j < l.
void write_angle_csv(std::ostream& out, const AngleReport& report);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace randfusion::io
