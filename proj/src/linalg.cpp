#include "randfusion/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "randfusion/error.hpp"

namespace randfusion {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kConvergence = 1e-12;
constexpr double kSymmetryTolerance = 1e-8;

double max_off_diagonal(const Matrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

void require_full_rank(const Matrix& g, const char* what) {
  const SymEigen eig = sym_eigen(g);
  if (is_rank_deficient(eig.eigenvalues)) {
    throw Error(ErrorKind::RankDeficient,
                std::string(what) + ": columns are numerically linearly dependent (lambda_min=" +
                    std::to_string(eig.eigenvalues.front()) +
                    ", lambda_max=" + std::to_string(eig.eigenvalues.back()) + ")");
  }
}

}  // namespace

Matrix gram(const Matrix& a) {
  const std::size_t n = a.cols();
  Matrix g(n, n);
  for (std::size_t k = 0; k < a.rows(); ++k) {
    const auto row = a.row(k);
    for (std::size_t i = 0; i < n; ++i) {
      const double aki = row[i];
      for (std::size_t j = i; j < n; ++j) g(i, j) += aki * row[j];
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
  return g;
}

bool is_rank_deficient(const std::vector<double>& gram_eigenvalues) {
  if (gram_eigenvalues.empty()) return true;
  const double lmin = gram_eigenvalues.front();
  const double lmax = gram_eigenvalues.back();
  const double tol = static_cast<double>(gram_eigenvalues.size()) *
                     std::numeric_limits<double>::epsilon() * lmax;
  return !(lmax > 0.0) || lmin <= tol;
}

SymEigen sym_eigen(const Matrix& input) {
  const std::size_t n = input.rows();
  if (n == 0 || input.cols() != n) {
    throw Error(ErrorKind::InvalidDims, "sym_eigen: matrix must be square and nonempty");
  }
  const double scale = std::max(1.0, max_abs(input));
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(input(i, j) - input(j, i)) > kSymmetryTolerance * scale) {
        throw Error(ErrorKind::NotSymmetric, "sym_eigen: entries (" + std::to_string(i) + "," +
                                                 std::to_string(j) + ") and transpose differ");
      }
      a(i, j) = 0.5 * (input(i, j) + input(j, i));
    }
  }
  if (!a.all_finite()) throw Error(ErrorKind::NonFinite, "sym_eigen: non-finite entry");

  Matrix v = Matrix::identity(n);
  const double tol = kConvergence * frobenius_norm(a);

  bool converged = false;
  for (int sweep = 0; sweep <= kMaxSweeps; ++sweep) {
    const double off = max_off_diagonal(a);
    if (off == 0.0 || off < tol) {
      converged = true;
      break;
    }
    if (sweep == kMaxSweeps) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged) {
    throw Error(ErrorKind::NoConvergence,
                "sym_eigen: Jacobi iteration did not converge in " + std::to_string(kMaxSweeps) +
                    " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  SymEigen out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

Matrix qr_orthonormalize(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (n > m) {
    throw Error(ErrorKind::InvalidDims, "qr_orthonormalize: more columns than rows");
  }
  require_full_rank(gram(a), "qr_orthonormalize");

  // Work on columns stored contiguously.
  Matrix q = a.transposed();
  for (std::size_t j = 0; j < n; ++j) {
    auto qj = q.row(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        const auto qi = q.row(i);
        double r = 0.0;
        for (std::size_t k = 0; k < m; ++k) r += qi[k] * qj[k];
        for (std::size_t k = 0; k < m; ++k) qj[k] -= r * qi[k];
      }
    }
    double norm = 0.0;
    for (double x : qj) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : qj) x /= norm;
  }
  return q.transposed();
}

Matrix pinv_sqrt_apply(const Matrix& vectors) {
  const std::size_t s = vectors.cols();
  if (s > vectors.rows()) {
    throw Error(ErrorKind::InvalidDims, "pinv_sqrt_apply: more vectors than ambient dimension");
  }
  const SymEigen eig = sym_eigen(gram(vectors));
  if (is_rank_deficient(eig.eigenvalues)) {
    throw Error(ErrorKind::RankDeficient,
                "pinv_sqrt_apply: vectors are numerically linearly dependent");
  }
  const double floor = static_cast<double>(s) * std::numeric_limits<double>::epsilon() *
                       eig.eigenvalues.back();
  std::vector<double> inv_sqrt(s);
  for (std::size_t k = 0; k < s; ++k) {
    inv_sqrt[k] = 1.0 / std::sqrt(std::max(eig.eigenvalues[k], floor));
  }
  // G^{-1/2} = V diag(λ^{-1/2}) Vᵀ
  const Matrix& v = eig.eigenvectors;
  Matrix g_inv_sqrt(s, s);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i; j < s; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < s; ++k) acc += v(i, k) * inv_sqrt[k] * v(j, k);
      g_inv_sqrt(i, j) = acc;
      g_inv_sqrt(j, i) = acc;
    }
  }
  return vectors * g_inv_sqrt;
}

}  // namespace randfusion
