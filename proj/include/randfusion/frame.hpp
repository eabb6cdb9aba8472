#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "randfusion/matrix.hpp"
#include "randfusion/rng.hpp"
#include "randfusion/subspace.hpp"

namespace randfusion {

/// Weighted family of subspaces {Wᵢ, vᵢ} sharing one ambient dimension.
class FusionFrame {
 public:
  /// Unit weights.
  explicit FusionFrame(std::vector<Subspace> subspaces);
  FusionFrame(std::vector<Subspace> subspaces, std::vector<double> weights);

  std::size_t ambient_dim() const noexcept { return subspaces_.front().ambient_dim(); }
  std::size_t size() const noexcept { return subspaces_.size(); }
  const std::vector<Subspace>& subspaces() const noexcept { return subspaces_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const Subspace& operator[](std::size_t i) const noexcept { return subspaces_[i]; }

  bool is_equidimensional() const noexcept;
  /// Σ sᵢ.
  std::size_t total_dim() const noexcept;

 private:
  std::vector<Subspace> subspaces_;
  std::vector<double> weights_;
};

struct FrameBoundsReport {
  double lower = 0.0;           // A = λ_min(S)
  double upper = 0.0;           // B = λ_max(S)
  double tight_constant = 0.0;  // C = sqrt(A·B)
  double epsilon_tight = 0.0;   // sqrt(B/A) − 1, +∞ when A = 0
};

/// S = Σ vᵢ² BᵢBᵢᵀ.
Matrix frame_operator(const FusionFrame& frame);

/// Extreme eigenvalues of the frame operator. A is reported as exactly 0 when
/// λ_min ≤ N·2⁻⁵²·λ_max (numerically rank deficient).
FrameBoundsReport frame_bounds(const FusionFrame& frame);
FrameBoundsReport frame_bounds_from_operator(const Matrix& frame_op);

/// (λ_min, λ_max) of the Gram matrix of the columns.
std::pair<double, double> riesz_bounds(const Matrix& vectors);

/// Smallest ε with the columns ε-Riesz: max(λ_max, 1/λ_min) − 1; +∞ if λ_min ≤ 0.
double riesz_epsilon(const std::pair<double, double>& bounds);

/// Samples an M×N Gaussian matrix (M = K·s), splits its rows into K blocks of
/// s consecutive rows and orthonormalizes the span of each block in ℝ^N.
/// A rank-deficient block is redrawn once before the error propagates.
FusionFrame build_fusion_frame_from_gaussian(RngStream& stream, std::size_t ambient_dim,
                                             std::size_t subspace_dim, std::size_t count);

/// Applies one orthogonal map to every basis.
FusionFrame rotate(const Matrix& orthogonal, const FusionFrame& frame);

}  // namespace randfusion
