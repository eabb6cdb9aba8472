#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "randfusion/angles.hpp"
#include "randfusion/frame.hpp"

namespace randfusion {

/// Welch floor slack: a trial violates the floor when its largest pairwise
/// tr[PⱼPₗ] is below welch_bound − 1e-9.
inline constexpr double kWelchSlack = 1e-9;
/// Per-trial check Σⱼₗ tr[PⱼPₗ] = tr(S²), relative.
inline constexpr double kConservationTolerance = 1e-8;
/// A run fails when more than this fraction of trials errored.
inline constexpr double kMaxFailedFraction = 0.01;

struct ExperimentConfig {
  std::size_t n = 0;  // ambient dimension
  std::size_t s = 0;  // subspace dimension
  std::size_t k = 0;  // subspace count
  double delta = 0.0;
  std::size_t trials = 0;
  std::uint64_t master_seed = 0;
  std::optional<std::vector<double>> weights;  // default: all 1
  std::vector<std::string> outputs{"csv", "json"};

  /// Equiangularity statistics are compared against theory only when N ≤ Ks.
  bool equiangular_regime() const noexcept { return n <= k * s; }
};

/// Throws ConfigInvalid on s = 0, s > N, K < 2, δ ∉ (0, 1), trials = 0,
/// a weight vector of the wrong length or with non-positive entries, or an
/// unknown output sink.
void validate(const ExperimentConfig& config);

struct TrialResult {
  std::size_t trial_index = 0;
  double epsilon_tight = 0.0;
  double frame_lower = 0.0;
  double frame_upper = 0.0;
  double hs_min = 0.0;
  double hs_max = 0.0;
  double hs_mean = 0.0;
  double max_pair_value = 0.0;
  bool welch_violated = false;
  bool window_pass = false;
  std::optional<std::string> error;  // set when the trial aborted

  bool ok() const noexcept { return !error.has_value(); }
};

struct SummaryStats {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (n − 1)
  double median = 0.0;
};

struct AggregateReport {
  ExperimentConfig config;
  std::size_t trials_completed = 0;
  std::vector<std::size_t> failed_trials;

  double tightness_threshold = 0.0;  // (1+δ)⁶ − 1
  Window window;                     // from ε = (1+δ)³ − 1
  double empirical_tightness_failure_rate = 0.0;
  double empirical_window_failure_rate = 0.0;
  double theoretical_tightness_failure = 0.0;
  std::optional<double> theoretical_all_pairs_failure;  // only when N ≤ Ks
  bool tightness_vacuous = false;
  std::optional<bool> all_pairs_vacuous;
  bool tightness_dominance = false;
  std::optional<bool> window_dominance;
  std::size_t welch_violations = 0;

  SummaryStats epsilon_tight;
  SummaryStats frame_lower;
  SummaryStats frame_upper;
  SummaryStats hs_min;
  SummaryStats hs_max;
  SummaryStats hs_mean;
};

/// Empirical rate ≤ min(1, bound) + 3·sqrt(p(1−p)/trials), p = min(1, bound).
bool dominates(double empirical_rate, double bound, std::size_t trials);

/// Measures one sampled frame. Errors (sampling, conservation) are recorded in
/// TrialResult::error rather than thrown.
TrialResult run_trial(const ExperimentConfig& config, std::size_t trial_index);

/// Same measurements on a caller-supplied frame.
TrialResult measure_trial(const ExperimentConfig& config, std::size_t trial_index,
                          const FusionFrame& frame);

/// The K subspaces of trial `trial_index`, drawn from
/// derive_stream(master_seed, trial_index).
FusionFrame sample_trial_frame(const ExperimentConfig& config, std::size_t trial_index);

struct ExperimentRun {
  AggregateReport report;
  std::vector<TrialResult> trials;  // ordered by trial index
};

/// Runs all trials on `workers` threads. Results do not depend on the worker
/// count. Throws TrialFailure when more than 1% of trials errored.
ExperimentRun run_experiment(const ExperimentConfig& config, std::size_t workers = 1);

/// Pure function of ordered trial results.
AggregateReport aggregate(const ExperimentConfig& config, const std::vector<TrialResult>& trials);

struct Chi2Report {
  std::size_t n = 0;
  double delta = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double upper_rate = 0.0;   // P(Z ≥ 1+δ)
  double lower_rate = 0.0;   // P(Z ≤ 1/(1+δ))
  double upper_bound = 0.0;  // chi2_upper_tail
  double lower_bound = 0.0;  // chi2_lower_tail
  bool upper_dominance = false;
  bool lower_dominance = false;
};

/// Samples Z = (1/N)Σ Xⱼ² for i.i.d. standard normals, one derived stream per
/// trial, and compares both tail frequencies against their bounds.
Chi2Report run_chi2_experiment(std::size_t n, double delta, std::size_t trials,
                               std::uint64_t seed, std::size_t workers = 1);

}  // namespace randfusion
