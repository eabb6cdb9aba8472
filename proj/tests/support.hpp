#pragma once

// Test-only oracles and fixtures. Nothing here calls into the code paths it is
// used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "randfusion/frame.hpp"
#include "randfusion/matrix.hpp"
#include "randfusion/rng.hpp"
#include "randfusion/subspace.hpp"

namespace testsupport {

using randfusion::FusionFrame;
using randfusion::Matrix;
using randfusion::Subspace;

/// Span of the standard basis vectors e_first .. e_{first+count-1} in ℝ^n.
inline Subspace coordinate_subspace(std::size_t n, std::size_t first, std::size_t count) {
  Matrix b(n, count);
  for (std::size_t c = 0; c < count; ++c) b(first + c, c) = 1.0;
  return Subspace(std::move(b));
}

/// ℝ^n split into n/s coordinate blocks of dimension s.
inline FusionFrame orthonormal_partition(std::size_t n, std::size_t s) {
  std::vector<Subspace> subs;
  for (std::size_t first = 0; first < n; first += s) subs.push_back(coordinate_subspace(n, first, s));
  return FusionFrame(std::move(subs));
}

/// Uniform(-1, 1) matrix from a plain std engine, independent of RngStream.
template <typename Engine>
Matrix uniform_matrix(Engine& engine, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (double& x : m.data()) {
    x = 2.0 * (static_cast<double>(engine() >> 11) * 0x1.0p-53) - 1.0;
  }
  return m;
}

/// Entry-by-entry AᵀA.
inline Matrix naive_gram(const Matrix& a) {
  Matrix g(a.cols(), a.cols());
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < a.rows(); ++k) acc += a(k, i) * a(k, j);
      g(i, j) = acc;
    }
  return g;
}

/// Naive triple-loop product.
inline Matrix naive_product(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      c(i, j) = acc;
    }
  return c;
}

inline Matrix naive_projector(const Matrix& basis) {
  return naive_product(basis, basis.transposed());
}

/// tr[PQ] from explicitly materialized projectors.
inline double explicit_projector_trace(const Subspace& a, const Subspace& b) {
  const Matrix prod = naive_product(naive_projector(a.basis()), naive_projector(b.basis()));
  double t = 0.0;
  for (std::size_t i = 0; i < prod.rows(); ++i) t += prod(i, i);
  return t;
}

/// Determinant by Gaussian elimination with partial pivoting.
inline double determinant(Matrix a) {
  const std::size_t n = a.rows();
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    if (a(piv, c) == 0.0) return 0.0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

inline double identity_defect(const Matrix& q) {
  const Matrix g = naive_gram(q);
  double m = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      m = std::max(m, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
  return m;
}

inline double relative_error(double value, double expected) {
  return std::abs(value - expected) / std::max(std::abs(expected), 1e-300);
}

}  // namespace testsupport
