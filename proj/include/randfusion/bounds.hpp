#pragma once

#include <cstddef>
#include <optional>

#include "randfusion/angles.hpp"

namespace randfusion {

// Closed-form failure-probability bounds for random Gaussian frames and random
// subspaces. Every product a^b·e^c is evaluated as exp(b·ln a + c); the log_*
// variants return that exponent directly and stay finite when the value itself
// exceeds the double range. Bounds are never clamped to 1.

/// P(Z ≥ 1+δ) ≤ exp(−Nδ²/4 + Nδ³/6) for Z a χ²_N variable divided by N.
double chi2_upper_tail(std::size_t n, double delta);
double log_chi2_upper_tail(std::size_t n, double delta);

/// P(Z ≤ 1/(1+δ)) ≤ exp(−Nδ²/4 + Nδ³/3).
double chi2_lower_tail(std::size_t n, double delta);
double log_chi2_lower_tail(std::size_t n, double delta);

/// 2M·exp(−Nδ²/4 + Nδ³/3): some column norm of an N×M Gaussian leaves
/// [1/(1+δ), 1+δ].
double column_norms_bound(std::size_t n, std::size_t m, double delta);
double log_column_norms_bound(std::size_t n, std::size_t m, double delta);

/// (1 + 4/δ)^s, the size of a δ/2-net of the unit sphere of an s-dim space.
double net_cardinality(std::size_t s, double delta);
double log_net_cardinality(std::size_t s, double delta);

/// Two-sided 2(1+4/δ)^s·exp(−Nδ²/4 + Nδ³/3); δ ∈ (0, 1).
double riesz_subset_failure(std::size_t s, std::size_t n, double delta);
double log_riesz_subset_failure(std::size_t s, std::size_t n, double delta);

/// 2K(1+4/δ)^s·exp(−Nδ²/4 + Nδ³/3); δ ∈ (0, 1).
double riesz_partition_failure(std::size_t k, std::size_t s, std::size_t n, double delta);
double log_riesz_partition_failure(std::size_t k, std::size_t s, std::size_t n, double delta);

/// 2(1+4/δ)^N·exp(−Mδ²/4 + Mδ³/3); δ ∈ (0, 1).
double gaussian_frame_failure(std::size_t n, std::size_t m, double delta);
double log_gaussian_frame_failure(std::size_t n, std::size_t m, double delta);

struct TightnessBound {
  double failure = 0.0;   // gaussian_frame_failure + riesz_partition_failure
  double lower = 0.0;     // M/(N(1+δ)⁶)
  double upper = 0.0;     // M(1+δ)⁶/N
  double epsilon = 0.0;   // (1+δ)⁶ − 1
};

/// Random subspaces with dims ≤ s summing to M have frame bounds inside
/// [lower, upper] except with probability `failure`.
TightnessBound tightness_failure(std::size_t n, std::size_t m, std::size_t k, std::size_t s,
                                 double delta);

/// exp(s(s−1)ln(β)/2 + s/2 + (1−β)s²/(2β)); β ∈ (0, 1).
double beta_lower_tail(std::size_t s, double beta);
double log_beta_lower_tail(std::size_t s, double beta);

/// exp(s(s−1)ln(β)/2 + s/2 + (1−β)s²/2); β > 1.
double beta_upper_tail(std::size_t s, double beta);
double log_beta_upper_tail(std::size_t s, double beta);

/// One side: exp((1+δ)s/2 − s(s−1)(δ²/2 − δ³/3)/2); δ ∈ (0, 1).
double ratio_two_sided(std::size_t s, double delta);
double log_ratio_two_sided(std::size_t s, double delta);

/// 2s·ratio_two_sided(s, δ).
double proj_mass_failure(std::size_t s, double delta);

/// (1+δ)³ − 1, the ε driving the equiangularity window.
double equiangular_epsilon(double delta);
/// (1+δ)⁶ − 1, the ε of the near-tightness statement.
double tightness_epsilon(double delta);

struct PairBound {
  double r1 = 0.0;  // projected-mass term, = proj_mass_failure(s, δ)
  double r2 = 0.0;  // Riesz/frame term
  double epsilon = 0.0;
  Window window;
  double total() const noexcept { return r1 + r2; }
};

/// Failure bound for one fixed pair k ≠ l with M = Ks; needs s ≤ N ≤ Ks.
/// r2 = column_norms_bound(N, M) + riesz_partition_failure(K, s, N)
///      + gaussian_frame_failure(N, M).
PairBound pair_failure(std::size_t n, std::size_t k, std::size_t s, double delta);

/// pair_failure total times K(K−1)/2; K ≥ 2.
double all_pairs_failure(std::size_t n, std::size_t k, std::size_t s, double delta);

struct RegimeCheck {
  double rhs = 0.0;  // δ²/4 − δ³/3
  double lhs1 = 0.0; // 3ln(K+1)/N + (s/N)ln(1+4/δ)
  bool cond1 = false;
  double lhs2 = 0.0; // (N/(Ks))ln(1+4/δ)
  bool cond2 = false;
};

/// Sufficient conditions for exponential decay of the pair bound in N.
/// δ ∈ (0, 0.75) so that the right side is positive.
RegimeCheck asymptotic_regime(std::size_t n, std::size_t k, std::size_t s, double delta);

/// A probability bound ≥ 1 carries no information.
inline bool is_vacuous(double bound) noexcept { return !(bound < 1.0); }

struct BoundParams {
  std::size_t n = 0;
  std::size_t s = 0;
  std::size_t k = 0;
  std::size_t m = 0;
  double delta = 0.0;
};

struct BoundSet {
  BoundParams params;
  double chi2_upper = 0.0;
  double chi2_lower = 0.0;
  double column_norms = 0.0;
  double net_cardinality = 0.0;
  double riesz_subset = 0.0;
  double riesz_partition = 0.0;
  double gaussian_frame = 0.0;
  TightnessBound tightness;
  double beta = 0.0;         // 1+δ; lower tail is taken at 1/β
  double beta_lower = 0.0;
  double beta_upper = 0.0;
  double ratio_two_sided = 0.0;
  double proj_mass = 0.0;
  // Present only when s ≤ N ≤ Ks.
  std::optional<PairBound> pair;
  std::optional<double> pair_total;
  // Present when additionally K ≥ 2.
  std::optional<double> all_pairs_total;
  // Present when δ < 0.75.
  std::optional<RegimeCheck> regime;
};

/// Evaluates every bound for (N, s, K, δ) with M = K·s unless given.
BoundSet compute_bound_set(std::size_t n, std::size_t s, std::size_t k, double delta,
                           std::optional<std::size_t> m = std::nullopt);

}  // namespace randfusion
