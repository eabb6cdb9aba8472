#include "randfusion/angles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "randfusion/error.hpp"

namespace randfusion {

double AngleReport::normalized(std::size_t j, std::size_t l) const noexcept {
  return static_cast<double>(ambient_dim) * pair_values(j, l) /
         static_cast<double>(dims[j] * dims[l]);
}

double hs_inner(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "hs_inner: ambient dimensions " + std::to_string(a.ambient_dim()) + " and " +
                    std::to_string(b.ambient_dim()) + " differ");
  }
  const Matrix& ua = a.basis();
  const Matrix& ub = b.basis();
  const std::size_t sa = ua.cols();
  const std::size_t sb = ub.cols();
  std::vector<double> cross(sa * sb, 0.0);
  for (std::size_t k = 0; k < ua.rows(); ++k) {
    const auto ra = ua.row(k);
    const auto rb = ub.row(k);
    for (std::size_t i = 0; i < sa; ++i)
      for (std::size_t j = 0; j < sb; ++j) cross[i * sb + j] += ra[i] * rb[j];
  }
  for (double& c : cross) c *= c;
  std::sort(cross.begin(), cross.end());
  double total = 0.0;
  for (double c : cross) total += c;
  return total;
}

double welch_bound(std::size_t ambient_dim, std::size_t count, std::size_t subspace_dim) {
  if (count < 2 || subspace_dim == 0 || subspace_dim > ambient_dim) {
    throw Error(ErrorKind::InvalidDims, "welch_bound: need K >= 2 and 1 <= s <= N, got N=" +
                                            std::to_string(ambient_dim) +
                                            ", K=" + std::to_string(count) +
                                            ", s=" + std::to_string(subspace_dim));
  }
  const double n = static_cast<double>(ambient_dim);
  const double k = static_cast<double>(count);
  const double s = static_cast<double>(subspace_dim);
  return s * (k * s - n) / ((k - 1.0) * n);
}

AngleReport angle_report(const FusionFrame& frame) {
  const std::size_t k = frame.size();
  if (k < 2) {
    throw Error(ErrorKind::TooFewSubspaces, "angle_report: need at least two subspaces");
  }
  AngleReport r;
  r.ambient_dim = frame.ambient_dim();
  r.dims.reserve(k);
  for (const auto& w : frame.subspaces()) r.dims.push_back(w.dim());
  r.pair_values = Matrix(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t l = j; l < k; ++l) {
      const double v = hs_inner(frame[j], frame[l]);
      r.pair_values(j, l) = v;
      r.pair_values(l, j) = v;
    }
  }
  double sum = 0.0;
  r.normalized_min = std::numeric_limits<double>::infinity();
  r.normalized_max = -std::numeric_limits<double>::infinity();
  r.max_pair_value = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t l = j + 1; l < k; ++l) {
      const double v = r.normalized(j, l);
      r.normalized_min = std::min(r.normalized_min, v);
      r.normalized_max = std::max(r.normalized_max, v);
      r.max_pair_value = std::max(r.max_pair_value, r.pair_values(j, l));
      sum += v;
    }
  }
  r.normalized_mean = sum / static_cast<double>(k * (k - 1) / 2);
  // Rounding in the sum may push the mean a hair outside [min, max].
  r.normalized_mean = std::clamp(r.normalized_mean, r.normalized_min, r.normalized_max);
  r.welch = frame.is_equidimensional()
                ? welch_bound(frame.ambient_dim(), k, frame[0].dim())
                : std::numeric_limits<double>::quiet_NaN();
  return r;
}

Window equiangular_window(double epsilon, std::size_t ambient_dim, std::size_t subspace_dim) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorKind::InvalidEpsilon, "equiangular_window: epsilon must be positive");
  }
  if (subspace_dim == 0 || subspace_dim > ambient_dim) {
    throw Error(ErrorKind::InvalidDims, "equiangular_window: need 1 <= s <= N");
  }
  const double n = static_cast<double>(ambient_dim);
  const double s = static_cast<double>(subspace_dim);
  const double root = std::sqrt((1.0 + epsilon) * n / s);
  return {1.0 / (1.0 + epsilon) - epsilon * root,
          1.0 + epsilon * (1.0 + root) + n * epsilon * epsilon / (4.0 * s)};
}

WindowCheck window_check(const AngleReport& report, const Window& window) {
  WindowCheck out;
  const std::size_t k = report.count();
  out.pairs.reserve(k * (k - 1) / 2);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t l = j + 1; l < k; ++l) {
      const double v = report.normalized(j, l);
      const bool inside = v >= window.lo - kWindowSlack && v <= window.hi + kWindowSlack;
      out.pairs.push_back({j, l, v, inside});
      out.all_inside = out.all_inside && inside;
    }
  }
  return out;
}

}  // namespace randfusion
