#pragma once

#include <vector>

#include "randfusion/matrix.hpp"

namespace randfusion {

struct SymEigen {
  std::vector<double> eigenvalues;  // nondecreasing
  Matrix eigenvectors;              // column k pairs with eigenvalues[k]
};

/// AᵀA, symmetrized.
Matrix gram(const Matrix& a);

/// True when λ_min ≤ n · 2⁻⁵² · λ_max for the spectrum of an n×n Gram matrix.
bool is_rank_deficient(const std::vector<double>& gram_eigenvalues);

/// Column-orthonormal Q spanning the columns of `a`, in Gram–Schmidt order
/// (column j of Q lies in the span of columns 0..j of `a`). Modified
/// Gram–Schmidt with one reorthogonalization pass.
Matrix qr_orthonormalize(const Matrix& a);

/// Cyclic Jacobi eigensolver for symmetric matrices. Sweeps until the largest
/// off-diagonal magnitude drops below 1e-12·‖A‖_F; at most 100 sweeps.
SymEigen sym_eigen(const Matrix& a);

/// Löwdin orthonormalization: returns X·G^{-1/2} with G = XᵀX, which equals
/// (S†)^{1/2}X for the frame operator S = Σ xⱼxⱼᵀ of the columns.
Matrix pinv_sqrt_apply(const Matrix& vectors);

}  // namespace randfusion
