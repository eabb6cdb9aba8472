#include "randfusion/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "randfusion/error.hpp"
#include "randfusion/linalg.hpp"

namespace randfusion {

double orthonormality_defect(const Matrix& basis) {
  const Matrix g = gram(basis);
  double defect = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      defect = std::max(defect, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
  return defect;
}

Subspace::Subspace(Matrix basis) : basis_(std::move(basis)) {
  if (basis_.cols() == 0 || basis_.cols() > basis_.rows()) {
    throw Error(ErrorKind::InvalidDims, "subspace dimension " + std::to_string(basis_.cols()) +
                                            " outside [1, " + std::to_string(basis_.rows()) + "]");
  }
  if (!basis_.all_finite()) throw Error(ErrorKind::NonFinite, "subspace basis is not finite");
  const double defect = orthonormality_defect(basis_);
  if (!(defect < kOrthonormalTolerance)) {
    throw Error(ErrorKind::NotOrthonormal,
                "subspace basis is not orthonormal (max |B^T B - I| = " + std::to_string(defect) +
                    ")");
  }
}

Matrix Subspace::projector() const { return basis_ * basis_.transposed(); }

}  // namespace randfusion
