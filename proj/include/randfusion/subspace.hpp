#pragma once

#include <cstddef>

#include "randfusion/matrix.hpp"

namespace randfusion {

/// Orthonormality tolerance enforced on every Subspace basis.
inline constexpr double kOrthonormalTolerance = 1e-8;

/// An s-dimensional subspace of ℝ^N held as an N×s column-orthonormal basis.
/// The orthogonal projector is basis·basisᵀ and is only formed on request.
class Subspace {
 public:
  /// Throws NotOrthonormal when ‖BᵀB − I‖_max ≥ 1e-8, InvalidDims when the
  /// basis has no columns or more columns than rows, NonFinite on NaN/Inf.
  explicit Subspace(Matrix basis);

  std::size_t ambient_dim() const noexcept { return basis_.rows(); }
  std::size_t dim() const noexcept { return basis_.cols(); }
  const Matrix& basis() const noexcept { return basis_; }

  Matrix projector() const;

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  Matrix basis_;
};

/// ‖BᵀB − I‖_max.
double orthonormality_defect(const Matrix& basis);

}  // namespace randfusion
