#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>

#include "randfusion/matrix.hpp"
#include "randfusion/subspace.hpp"

namespace randfusion {

/// xoshiro256++ stream keyed by (master_seed, stream_id). Single owner:
/// move it between threads, never share it.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() noexcept { return next_u64(); }

  std::uint64_t next_u64() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double next_uniform() noexcept;
  /// Standard normal via the Marsaglia polar method; the second variate of
  /// each accepted pair is cached and returned by the next call.
  double next_gaussian() noexcept;

  std::uint64_t stream_id() const noexcept { return stream_id_; }

 private:
  std::array<std::uint64_t, 4> state_{};
  std::uint64_t stream_id_ = 0;
  std::optional<double> spare_;
};

/// SplitMix64 over master_seed ^ (stream_id · golden-ratio constant) seeds the
/// xoshiro state. Same arguments, same sequence.
RngStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_id);

/// rows×cols i.i.d. N(0,1), filled row-major.
Matrix gaussian_matrix(RngStream& stream, std::size_t rows, std::size_t cols);

/// Uniform unit vector in ℝ^dim as a dim×1 matrix (normalized Gaussian).
Matrix sphere_vector(RngStream& stream, std::size_t dim);

/// Unitarily invariant random s-dimensional subspace of ℝ^N: the span of s
/// independent sphere vectors, orthonormalized by pinv_sqrt_apply.
Subspace random_subspace(RngStream& stream, std::size_t ambient_dim, std::size_t subspace_dim);

}  // namespace randfusion
