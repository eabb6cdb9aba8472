#include "randfusion/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <string>
#include <thread>

#include "randfusion/angles.hpp"
#include "randfusion/bounds.hpp"
#include "randfusion/error.hpp"
#include "randfusion/rng.hpp"

namespace randfusion {

namespace {

void config_error(const std::string& message) {
  throw Error(ErrorKind::ConfigInvalid, message);
}

// Runs task(i) for i in [0, count) on up to `workers` threads.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& task) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) task(i);
    });
  }
}

SummaryStats summarize(std::vector<double> values) {
  SummaryStats out;
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  out.median = values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
  return out;
}

}  // namespace

void validate(const ExperimentConfig& c) {
  if (c.s == 0 || c.s > c.n) {
    config_error("need 1 <= subspace_dim <= dim, got subspace_dim=" + std::to_string(c.s) +
                 ", dim=" + std::to_string(c.n));
  }
  if (c.k < 2) config_error("count must be at least 2");
  if (!(c.delta > 0.0 && c.delta < 1.0)) {
    config_error("delta must lie in (0, 1), got " + std::to_string(c.delta));
  }
  if (c.trials == 0) config_error("trials must be at least 1");
  if (c.weights) {
    if (c.weights->size() != c.k) {
      config_error("weights has " + std::to_string(c.weights->size()) + " entries, expected " +
                   std::to_string(c.k));
    }
    for (double w : *c.weights)
      if (!(w > 0.0) || !std::isfinite(w)) config_error("weights must be positive and finite");
  }
  for (const auto& sink : c.outputs)
    if (sink != "csv" && sink != "json") config_error("unknown output sink '" + sink + "'");
}

bool dominates(double empirical_rate, double bound, std::size_t trials) {
  const double p = std::min(1.0, bound);
  const double slack = 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  return empirical_rate <= p + slack;
}

FusionFrame sample_trial_frame(const ExperimentConfig& config, std::size_t trial_index) {
  RngStream stream = derive_stream(config.master_seed, trial_index);
  std::vector<Subspace> subspaces;
  subspaces.reserve(config.k);
  for (std::size_t j = 0; j < config.k; ++j) {
    subspaces.push_back(random_subspace(stream, config.n, config.s));
  }
  return FusionFrame(std::move(subspaces));
}

TrialResult measure_trial(const ExperimentConfig& config, std::size_t trial_index,
                          const FusionFrame& frame) {
  TrialResult t;
  t.trial_index = trial_index;
  try {
    const Matrix unit_op = frame_operator(frame);
    const FrameBoundsReport fb =
        config.weights
            ? frame_bounds(FusionFrame(frame.subspaces(), *config.weights))
            : frame_bounds_from_operator(unit_op);
    t.epsilon_tight = fb.epsilon_tight;
    t.frame_lower = fb.lower;
    t.frame_upper = fb.upper;

    const AngleReport angles = angle_report(frame);

    // Σⱼₗ tr[PⱼPₗ] = tr(S²) = ‖S‖_F² for the unit-weight operator.
    double pair_sum = 0.0;
    for (double v : angles.pair_values.data()) pair_sum += v;
    double op_sq = 0.0;
    for (double v : unit_op.data()) op_sq += v * v;
    const double rel = std::abs(pair_sum - op_sq) / std::max(op_sq, 1e-300);
    if (!(rel <= kConservationTolerance)) {
      throw Error(ErrorKind::TrialFailure,
                  "trial " + std::to_string(trial_index) +
                      ": pair table does not match tr(S^2) (relative error " +
                      std::to_string(rel) + ")");
    }

    t.hs_min = angles.normalized_min;
    t.hs_max = angles.normalized_max;
    t.hs_mean = angles.normalized_mean;
    t.max_pair_value = angles.max_pair_value;
    if (frame.total_dim() >= frame.ambient_dim() && !std::isnan(angles.welch)) {
      t.welch_violated = angles.max_pair_value < angles.welch - kWelchSlack;
    }
    const Window window = equiangular_window(equiangular_epsilon(config.delta), config.n, config.s);
    t.window_pass = window_check(angles, window).all_inside;
  } catch (const Error& e) {
    t.error = std::string("error[") + std::string(kind_name(e.kind())) + "]: " + e.what();
  }
  return t;
}

TrialResult run_trial(const ExperimentConfig& config, std::size_t trial_index) {
  try {
    return measure_trial(config, trial_index, sample_trial_frame(config, trial_index));
  } catch (const Error& e) {
    TrialResult t;
    t.trial_index = trial_index;
    t.error = std::string("error[") + std::string(kind_name(e.kind())) + "]: " + e.what();
    return t;
  }
}

AggregateReport aggregate(const ExperimentConfig& config, const std::vector<TrialResult>& trials) {
  AggregateReport r;
  r.config = config;
  r.tightness_threshold = tightness_epsilon(config.delta);
  r.window = equiangular_window(equiangular_epsilon(config.delta), config.n, config.s);

  std::vector<double> eps, lower, upper, hmin, hmax, hmean;
  std::size_t tight_fail = 0;
  std::size_t window_fail = 0;
  for (const auto& t : trials) {
    if (!t.ok()) {
      r.failed_trials.push_back(t.trial_index);
      continue;
    }
    ++r.trials_completed;
    if (t.epsilon_tight > r.tightness_threshold) ++tight_fail;
    if (!t.window_pass) ++window_fail;
    if (t.welch_violated) ++r.welch_violations;
    eps.push_back(t.epsilon_tight);
    lower.push_back(t.frame_lower);
    upper.push_back(t.frame_upper);
    hmin.push_back(t.hs_min);
    hmax.push_back(t.hs_max);
    hmean.push_back(t.hs_mean);
  }
  if (r.trials_completed == 0) {
    throw Error(ErrorKind::TrialFailure, "no trial completed");
  }
  const double done = static_cast<double>(r.trials_completed);
  r.empirical_tightness_failure_rate = static_cast<double>(tight_fail) / done;
  r.empirical_window_failure_rate = static_cast<double>(window_fail) / done;

  r.theoretical_tightness_failure =
      tightness_failure(config.n, config.k * config.s, config.k, config.s, config.delta).failure;
  r.tightness_vacuous = is_vacuous(r.theoretical_tightness_failure);
  r.tightness_dominance = dominates(r.empirical_tightness_failure_rate,
                                    r.theoretical_tightness_failure, r.trials_completed);
  if (config.equiangular_regime()) {
    const double bound = all_pairs_failure(config.n, config.k, config.s, config.delta);
    r.theoretical_all_pairs_failure = bound;
    r.all_pairs_vacuous = is_vacuous(bound);
    r.window_dominance = dominates(r.empirical_window_failure_rate, bound, r.trials_completed);
  }

  r.epsilon_tight = summarize(std::move(eps));
  r.frame_lower = summarize(std::move(lower));
  r.frame_upper = summarize(std::move(upper));
  r.hs_min = summarize(std::move(hmin));
  r.hs_max = summarize(std::move(hmax));
  r.hs_mean = summarize(std::move(hmean));
  return r;
}

ExperimentRun run_experiment(const ExperimentConfig& config, std::size_t workers) {
  validate(config);
  std::vector<TrialResult> trials(config.trials);
  parallel_for(config.trials, workers, [&](std::size_t i) {
    try {
      trials[i] = run_trial(config, i);
    } catch (const std::exception& e) {
      trials[i].trial_index = i;
      trials[i].error = std::string("error[TrialFailure]: ") + e.what();
    }
  });

  std::size_t failed = 0;
  for (const auto& t : trials) failed += t.ok() ? 0 : 1;
  if (static_cast<double>(failed) > kMaxFailedFraction * static_cast<double>(config.trials)) {
    std::string which;
    for (const auto& t : trials) {
      if (t.ok()) continue;
      if (!which.empty()) which += ",";
      which += std::to_string(t.trial_index);
    }
    throw Error(ErrorKind::TrialFailure, std::to_string(failed) + " of " +
                                             std::to_string(config.trials) +
                                             " trials failed (indices " + which + ")");
  }
  ExperimentRun run{aggregate(config, trials), std::move(trials)};
  return run;
}

Chi2Report run_chi2_experiment(std::size_t n, double delta, std::size_t trials, std::uint64_t seed,
                               std::size_t workers) {
  if (n == 0) throw Error(ErrorKind::ConfigInvalid, "chi-square experiment needs N >= 1");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorKind::ConfigInvalid, "chi-square experiment needs delta in (0, 1)");
  }
  if (trials == 0) throw Error(ErrorKind::ConfigInvalid, "chi-square experiment needs trials >= 1");

  Chi2Report r;
  r.n = n;
  r.delta = delta;
  r.trials = trials;
  r.seed = seed;
  const double hi = 1.0 + delta;
  const double lo = 1.0 / (1.0 + delta);
  std::vector<unsigned char> side(trials, 0);  // bit 0: upper hit, bit 1: lower hit
  parallel_for(trials, workers, [&](std::size_t t) {
    RngStream stream = derive_stream(seed, t);
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double g = stream.next_gaussian();
      sum += g * g;
    }
    const double z = sum / static_cast<double>(n);
    side[t] = static_cast<unsigned char>((z >= hi ? 1 : 0) | (z <= lo ? 2 : 0));
  });
  std::size_t upper = 0;
  std::size_t lower = 0;
  for (unsigned char b : side) {
    upper += b & 1;
    lower += (b >> 1) & 1;
  }
  r.upper_rate = static_cast<double>(upper) / static_cast<double>(trials);
  r.lower_rate = static_cast<double>(lower) / static_cast<double>(trials);
  r.upper_bound = chi2_upper_tail(n, delta);
  r.lower_bound = chi2_lower_tail(n, delta);
  r.upper_dominance = dominates(r.upper_rate, r.upper_bound, trials);
  r.lower_dominance = dominates(r.lower_rate, r.lower_bound, trials);
  return r;
}

}  // namespace randfusion
