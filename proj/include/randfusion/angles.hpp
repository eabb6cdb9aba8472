#pragma once

#include <cstddef>
#include <vector>

#include "randfusion/frame.hpp"
#include "randfusion/matrix.hpp"
#include "randfusion/subspace.hpp"

namespace randfusion {

/// Slack applied on both ends of equiangularity window membership.
inline constexpr double kWindowSlack = 1e-12;

struct AngleReport {
  std::size_t ambient_dim = 0;
  std::vector<std::size_t> dims;  // sⱼ
  Matrix pair_values;             // K×K, tr[PⱼPₗ]
  double normalized_min = 0.0;    // over j ≠ l of N·tr[PⱼPₗ]/(sⱼsₗ)
  double normalized_max = 0.0;
  double normalized_mean = 0.0;
  double max_pair_value = 0.0;    // max over j ≠ l of tr[PⱼPₗ]
  double welch = 0.0;             // NaN when not equi-dimensional

  std::size_t count() const noexcept { return dims.size(); }
  double normalized(std::size_t j, std::size_t l) const noexcept;
};

struct Window {
  double lo = 0.0;
  double hi = 0.0;
};

struct PairVerdict {
  std::size_t j = 0;
  std::size_t l = 0;
  double normalized = 0.0;
  bool inside = false;
};

struct WindowCheck {
  std::vector<PairVerdict> pairs;  // j < l, row-major order
  bool all_inside = true;
};

/// tr[PₐP_b] = ‖UₐᵀU_b‖_F². The squared cross-Gram entries are summed in sorted
/// order so the result is bit-symmetric in its arguments.
double hs_inner(const Subspace& a, const Subspace& b);

AngleReport angle_report(const FusionFrame& frame);

/// s(Ks − N)/((K − 1)N). Negative when Ks < N.
double welch_bound(std::size_t ambient_dim, std::size_t count, std::size_t subspace_dim);

/// Equiangularity window for N·tr[PⱼPₗ]/s²:
///   lo = 1/(1+ε) − ε·sqrt((1+ε)N/s)
///   hi = 1 + ε(1 + sqrt((1+ε)N/s)) + Nε²/(4s)
Window equiangular_window(double epsilon, std::size_t ambient_dim, std::size_t subspace_dim);

WindowCheck window_check(const AngleReport& report, const Window& window);

}  // namespace randfusion
