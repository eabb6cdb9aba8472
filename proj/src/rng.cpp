#include "randfusion/rng.hpp"

#include <bit>
#include <cmath>

#include "randfusion/error.hpp"
#include "randfusion/linalg.hpp"

namespace randfusion {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr double kDegenerateNorm = 1e-150;
constexpr int kSphereRetries = 8;

std::uint64_t splitmix64(std::uint64_t& x) noexcept {
  std::uint64_t z = (x += kGolden);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id) : stream_id_(stream_id) {
  std::uint64_t sm = master_seed ^ (stream_id * kGolden);
  for (auto& word : state_) word = splitmix64(sm);
}

std::uint64_t RngStream::next_u64() noexcept {
  auto& s = state_;
  const std::uint64_t result = std::rotl(s[0] + s[3], 23) + s[0];
  const std::uint64_t t = s[1] << 17;
  s[2] ^= s[0];
  s[3] ^= s[1];
  s[1] ^= s[2];
  s[0] ^= s[3];
  s[2] ^= t;
  s[3] = std::rotl(s[3], 45);
  return result;
}

double RngStream::next_uniform() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_gaussian() noexcept {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return z;
  }
  double u = 0.0;
  double v = 0.0;
  double r2 = 0.0;
  do {
    u = 2.0 * next_uniform() - 1.0;
    v = 2.0 * next_uniform() - 1.0;
    r2 = u * u + v * v;
  } while (r2 >= 1.0 || r2 == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(r2) / r2);
  spare_ = v * factor;
  return u * factor;
}

RngStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_id) {
  return RngStream(master_seed, stream_id);
}

Matrix gaussian_matrix(RngStream& stream, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (double& x : m.data()) x = stream.next_gaussian();
  return m;
}

Matrix sphere_vector(RngStream& stream, std::size_t dim) {
  if (dim == 0) throw Error(ErrorKind::InvalidDims, "sphere_vector: dimension must be positive");
  for (int attempt = 0; attempt <= kSphereRetries; ++attempt) {
    Matrix v = gaussian_matrix(stream, dim, 1);
    const double norm = frobenius_norm(v);
    if (norm < kDegenerateNorm) continue;
    for (double& x : v.data()) x /= norm;
    return v;
  }
  throw Error(ErrorKind::DegenerateDraw, "sphere_vector: Gaussian draw had vanishing norm");
}

Subspace random_subspace(RngStream& stream, std::size_t ambient_dim, std::size_t subspace_dim) {
  if (subspace_dim == 0 || subspace_dim > ambient_dim) {
    throw Error(ErrorKind::InvalidDims, "random_subspace: need 1 <= s <= N, got s=" +
                                            std::to_string(subspace_dim) +
                                            ", N=" + std::to_string(ambient_dim));
  }
  for (int attempt = 0;; ++attempt) {
    Matrix vectors(ambient_dim, subspace_dim);
    for (std::size_t j = 0; j < subspace_dim; ++j) {
      vectors.set_column(j, sphere_vector(stream, ambient_dim).data());
    }
    try {
      return Subspace(pinv_sqrt_apply(vectors));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::RankDeficient || attempt >= 1) throw;
    }
  }
}

}  // namespace randfusion
