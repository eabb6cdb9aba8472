#include "randfusion/frame.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "randfusion/error.hpp"
#include "randfusion/linalg.hpp"

namespace randfusion {

FusionFrame::FusionFrame(std::vector<Subspace> subspaces)
    : FusionFrame(std::move(subspaces), {}) {}

FusionFrame::FusionFrame(std::vector<Subspace> subspaces, std::vector<double> weights)
    : subspaces_(std::move(subspaces)), weights_(std::move(weights)) {
  if (subspaces_.empty()) {
    throw Error(ErrorKind::TooFewSubspaces, "fusion frame needs at least one subspace");
  }
  if (weights_.empty()) weights_.assign(subspaces_.size(), 1.0);
  if (weights_.size() != subspaces_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "fusion frame has " +
                                                  std::to_string(subspaces_.size()) +
                                                  " subspaces but " +
                                                  std::to_string(weights_.size()) + " weights");
  }
  const std::size_t n = subspaces_.front().ambient_dim();
  for (std::size_t i = 0; i < subspaces_.size(); ++i) {
    if (subspaces_[i].ambient_dim() != n) {
      throw Error(ErrorKind::DimensionMismatch,
                  "subspace " + std::to_string(i) + " lives in dimension " +
                      std::to_string(subspaces_[i].ambient_dim()) + ", expected " +
                      std::to_string(n));
    }
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
      throw Error(ErrorKind::InvalidDims, "weight " + std::to_string(i) + " must be positive");
    }
  }
}

bool FusionFrame::is_equidimensional() const noexcept {
  for (const auto& w : subspaces_)
    if (w.dim() != subspaces_.front().dim()) return false;
  return true;
}

std::size_t FusionFrame::total_dim() const noexcept {
  std::size_t m = 0;
  for (const auto& w : subspaces_) m += w.dim();
  return m;
}

Matrix frame_operator(const FusionFrame& frame) {
  const std::size_t n = frame.ambient_dim();
  Matrix s(n, n);
  for (std::size_t idx = 0; idx < frame.size(); ++idx) {
    const Matrix& b = frame[idx].basis();
    const double w2 = frame.weights()[idx] * frame.weights()[idx];
    for (std::size_t i = 0; i < n; ++i) {
      const auto bi = b.row(i);
      for (std::size_t j = i; j < n; ++j) {
        const auto bj = b.row(j);
        double acc = 0.0;
        for (std::size_t c = 0; c < bi.size(); ++c) acc += bi[c] * bj[c];
        s(i, j) += w2 * acc;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) s(i, j) = s(j, i);
  return s;
}

FrameBoundsReport frame_bounds_from_operator(const Matrix& frame_op) {
  const SymEigen eig = sym_eigen(frame_op);
  const double lmin = eig.eigenvalues.front();
  const double lmax = eig.eigenvalues.back();
  FrameBoundsReport r;
  r.upper = lmax > 0.0 ? lmax : 0.0;
  const double rank_floor = static_cast<double>(frame_op.rows()) *
                            std::numeric_limits<double>::epsilon() * r.upper;
  r.lower = lmin > rank_floor ? lmin : 0.0;
  r.tight_constant = std::sqrt(r.lower * r.upper);
  r.epsilon_tight = r.lower > 0.0 ? std::sqrt(r.upper / r.lower) - 1.0
                                  : std::numeric_limits<double>::infinity();
  return r;
}

FrameBoundsReport frame_bounds(const FusionFrame& frame) {
  return frame_bounds_from_operator(frame_operator(frame));
}

std::pair<double, double> riesz_bounds(const Matrix& vectors) {
  const SymEigen eig = sym_eigen(gram(vectors));
  return {eig.eigenvalues.front(), eig.eigenvalues.back()};
}

double riesz_epsilon(const std::pair<double, double>& bounds) {
  if (!(bounds.first > 0.0)) return std::numeric_limits<double>::infinity();
  return std::max(bounds.second, 1.0 / bounds.first) - 1.0;
}

FusionFrame build_fusion_frame_from_gaussian(RngStream& stream, std::size_t ambient_dim,
                                             std::size_t subspace_dim, std::size_t count) {
  if (subspace_dim == 0 || subspace_dim > ambient_dim || count == 0) {
    throw Error(ErrorKind::InvalidDims, "gaussian fusion frame: need 1 <= s <= N and K >= 1");
  }
  const Matrix x = gaussian_matrix(stream, count * subspace_dim, ambient_dim);
  std::vector<Subspace> subspaces;
  subspaces.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    // Block k is rows k·s .. k·s+s−1 of X, taken as column vectors in ℝ^N.
    Matrix block(ambient_dim, subspace_dim);
    for (std::size_t c = 0; c < subspace_dim; ++c) block.set_column(c, x.row(k * subspace_dim + c));
    try {
      subspaces.emplace_back(pinv_sqrt_apply(block));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::RankDeficient) throw;
      const Matrix redraw = gaussian_matrix(stream, subspace_dim, ambient_dim);
      subspaces.emplace_back(pinv_sqrt_apply(redraw.transposed()));
    }
  }
  return FusionFrame(std::move(subspaces));
}

FusionFrame rotate(const Matrix& orthogonal, const FusionFrame& frame) {
  std::vector<Subspace> rotated;
  rotated.reserve(frame.size());
  for (const auto& w : frame.subspaces()) rotated.emplace_back(orthogonal * w.basis());
  return FusionFrame(std::move(rotated), frame.weights());
}

}  // namespace randfusion
