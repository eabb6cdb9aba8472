#include "randfusion/bounds.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "randfusion/error.hpp"

namespace randfusion {

namespace {

void require_positive_delta(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw Error(ErrorKind::InvalidDelta,
                "delta must be positive and finite, got " + std::to_string(delta));
  }
}

void require_unit_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorKind::InvalidDelta, "delta must lie in (0, 1), got " + std::to_string(delta));
  }
}

void require_positive(std::size_t value, const char* name) {
  if (value == 0) {
    throw Error(ErrorKind::InvalidDims, std::string(name) + " must be at least 1");
  }
}

void require_subspace_fits(std::size_t s, std::size_t n) {
  require_positive(s, "s");
  if (s > n) {
    throw Error(ErrorKind::InvalidDims, "subspace dimension s=" + std::to_string(s) +
                                            " exceeds ambient dimension N=" + std::to_string(n));
  }
}

double d(std::size_t v) { return static_cast<double>(v); }

// ln(1 + 4/δ)
double log_net_base(double delta) { return std::log1p(4.0 / delta); }

// −Nδ²/4 + Nδ³/3 without argument checks.
double lower_exponent(std::size_t n, double delta) {
  return -d(n) * delta * delta / 4.0 + d(n) * delta * delta * delta / 3.0;
}

}  // namespace

double log_chi2_upper_tail(std::size_t n, double delta) {
  require_positive(n, "N");
  require_positive_delta(delta);
  return -d(n) * delta * delta / 4.0 + d(n) * delta * delta * delta / 6.0;
}

double chi2_upper_tail(std::size_t n, double delta) {
  return std::exp(log_chi2_upper_tail(n, delta));
}

double log_chi2_lower_tail(std::size_t n, double delta) {
  require_positive(n, "N");
  require_positive_delta(delta);
  return lower_exponent(n, delta);
}

double chi2_lower_tail(std::size_t n, double delta) {
  return std::exp(log_chi2_lower_tail(n, delta));
}

double log_column_norms_bound(std::size_t n, std::size_t m, double delta) {
  require_positive(m, "M");
  return std::numbers::ln2 + std::log(d(m)) + log_chi2_lower_tail(n, delta);
}

double column_norms_bound(std::size_t n, std::size_t m, double delta) {
  return std::exp(log_column_norms_bound(n, m, delta));
}

double log_net_cardinality(std::size_t s, double delta) {
  require_positive(s, "s");
  require_positive_delta(delta);
  return d(s) * log_net_base(delta);
}

double net_cardinality(std::size_t s, double delta) {
  return std::exp(log_net_cardinality(s, delta));
}

double log_riesz_partition_failure(std::size_t k, std::size_t s, std::size_t n, double delta) {
  require_positive(k, "K");
  require_subspace_fits(s, n);
  require_unit_delta(delta);
  return std::numbers::ln2 + std::log(d(k)) + d(s) * log_net_base(delta) +
         lower_exponent(n, delta);
}

double riesz_partition_failure(std::size_t k, std::size_t s, std::size_t n, double delta) {
  return std::exp(log_riesz_partition_failure(k, s, n, delta));
}

double log_riesz_subset_failure(std::size_t s, std::size_t n, double delta) {
  return log_riesz_partition_failure(1, s, n, delta);
}

double riesz_subset_failure(std::size_t s, std::size_t n, double delta) {
  return std::exp(log_riesz_subset_failure(s, n, delta));
}

double log_gaussian_frame_failure(std::size_t n, std::size_t m, double delta) {
  require_positive(n, "N");
  require_positive(m, "M");
  require_unit_delta(delta);
  return std::numbers::ln2 + d(n) * log_net_base(delta) + lower_exponent(m, delta);
}

double gaussian_frame_failure(std::size_t n, std::size_t m, double delta) {
  return std::exp(log_gaussian_frame_failure(n, m, delta));
}

double tightness_epsilon(double delta) { return std::pow(1.0 + delta, 6) - 1.0; }

double equiangular_epsilon(double delta) { return std::pow(1.0 + delta, 3) - 1.0; }

TightnessBound tightness_failure(std::size_t n, std::size_t m, std::size_t k, std::size_t s,
                                 double delta) {
  require_positive(k, "K");
  require_subspace_fits(s, n);
  require_unit_delta(delta);
  if (m < s || m > k * s) {
    throw Error(ErrorKind::InvalidDims, "total dimension M=" + std::to_string(m) +
                                            " must lie in [s, K*s] = [" + std::to_string(s) +
                                            ", " + std::to_string(k * s) + "]");
  }
  const double spread = std::pow(1.0 + delta, 6);
  TightnessBound out;
  out.failure = gaussian_frame_failure(n, m, delta) + riesz_partition_failure(k, s, n, delta);
  out.lower = d(m) / (d(n) * spread);
  out.upper = d(m) * spread / d(n);
  out.epsilon = spread - 1.0;
  return out;
}

double log_beta_lower_tail(std::size_t s, double beta) {
  require_positive(s, "s");
  if (!(beta > 0.0 && beta < 1.0)) {
    throw Error(ErrorKind::InvalidBeta, "lower tail needs beta in (0, 1), got " +
                                            std::to_string(beta));
  }
  const double sd = d(s);
  return sd * (sd - 1.0) * std::log(beta) / 2.0 + sd / 2.0 +
         (1.0 - beta) * sd * sd / (2.0 * beta);
}

double beta_lower_tail(std::size_t s, double beta) {
  return std::exp(log_beta_lower_tail(s, beta));
}

double log_beta_upper_tail(std::size_t s, double beta) {
  require_positive(s, "s");
  if (!(beta > 1.0) || !std::isfinite(beta)) {
    throw Error(ErrorKind::InvalidBeta, "upper tail needs beta > 1, got " + std::to_string(beta));
  }
  const double sd = d(s);
  return sd * (sd - 1.0) * std::log(beta) / 2.0 + sd / 2.0 + (1.0 - beta) * sd * sd / 2.0;
}

double beta_upper_tail(std::size_t s, double beta) {
  return std::exp(log_beta_upper_tail(s, beta));
}

double log_ratio_two_sided(std::size_t s, double delta) {
  require_positive(s, "s");
  require_unit_delta(delta);
  const double sd = d(s);
  return (1.0 + delta) * sd / 2.0 -
         sd * (sd - 1.0) * (delta * delta / 2.0 - delta * delta * delta / 3.0) / 2.0;
}

double ratio_two_sided(std::size_t s, double delta) {
  return std::exp(log_ratio_two_sided(s, delta));
}

double proj_mass_failure(std::size_t s, double delta) {
  return 2.0 * d(s) * ratio_two_sided(s, delta);
}

PairBound pair_failure(std::size_t n, std::size_t k, std::size_t s, double delta) {
  require_positive(k, "K");
  require_subspace_fits(s, n);
  require_unit_delta(delta);
  const std::size_t m = k * s;
  if (n > m) {
    throw Error(ErrorKind::InvalidDims, "pair bound needs N <= K*s, got N=" + std::to_string(n) +
                                            ", K*s=" + std::to_string(m));
  }
  PairBound out;
  out.r1 = proj_mass_failure(s, delta);
  out.r2 = column_norms_bound(n, m, delta) + riesz_partition_failure(k, s, n, delta) +
           gaussian_frame_failure(n, m, delta);
  out.epsilon = equiangular_epsilon(delta);
  out.window = equiangular_window(out.epsilon, n, s);
  return out;
}

double all_pairs_failure(std::size_t n, std::size_t k, std::size_t s, double delta) {
  if (k < 2) throw Error(ErrorKind::InvalidDims, "all-pairs bound needs K >= 2");
  const PairBound pair = pair_failure(n, k, s, delta);
  return pair.total() * d(k * (k - 1) / 2);
}

RegimeCheck asymptotic_regime(std::size_t n, std::size_t k, std::size_t s, double delta) {
  require_positive(k, "K");
  require_subspace_fits(s, n);
  require_positive_delta(delta);
  RegimeCheck out;
  out.rhs = delta * delta / 4.0 - delta * delta * delta / 3.0;
  if (!(out.rhs > 0.0)) {
    throw Error(ErrorKind::InvalidDelta,
                "regime check needs delta in (0, 0.75), got " + std::to_string(delta));
  }
  const double net = log_net_base(delta);
  out.lhs1 = 3.0 * std::log(d(k) + 1.0) / d(n) + d(s) / d(n) * net;
  out.cond1 = out.lhs1 < out.rhs;
  out.lhs2 = d(n) / (d(k) * d(s)) * net;
  out.cond2 = out.lhs2 < out.rhs;
  return out;
}

BoundSet compute_bound_set(std::size_t n, std::size_t s, std::size_t k, double delta,
                           std::optional<std::size_t> m) {
  require_positive(n, "N");
  require_positive(k, "K");
  require_subspace_fits(s, n);
  require_unit_delta(delta);

  BoundSet b;
  b.params = {n, s, k, m.value_or(k * s), delta};
  const std::size_t big_m = b.params.m;
  b.chi2_upper = chi2_upper_tail(n, delta);
  b.chi2_lower = chi2_lower_tail(n, delta);
  b.column_norms = column_norms_bound(n, big_m, delta);
  b.net_cardinality = net_cardinality(s, delta);
  b.riesz_subset = riesz_subset_failure(s, n, delta);
  b.riesz_partition = riesz_partition_failure(k, s, n, delta);
  b.gaussian_frame = gaussian_frame_failure(n, big_m, delta);
  b.tightness = tightness_failure(n, big_m, k, s, delta);
  b.beta = 1.0 + delta;
  b.beta_lower = beta_lower_tail(s, 1.0 / b.beta);
  b.beta_upper = beta_upper_tail(s, b.beta);
  b.ratio_two_sided = ratio_two_sided(s, delta);
  b.proj_mass = proj_mass_failure(s, delta);
  if (n <= k * s) {
    b.pair = pair_failure(n, k, s, delta);
    b.pair_total = b.pair->total();
    if (k >= 2) b.all_pairs_total = *b.pair_total * d(k * (k - 1) / 2);
  }
  if (delta * delta / 4.0 - delta * delta * delta / 3.0 > 0.0) {
    b.regime = asymptotic_regime(n, k, s, delta);
  }
  return b;
}

}  // namespace randfusion
