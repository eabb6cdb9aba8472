#include <doctest.h>

#include <array>
#include <cmath>

#include "randfusion/error.hpp"
#include "randfusion/rng.hpp"
#include "support.hpp"

using namespace randfusion;
using namespace testsupport;

TEST_CASE("derive_stream is deterministic and separates stream ids") {
  RngStream a = derive_stream(42, 0);
  RngStream b = derive_stream(42, 0);
  RngStream c = derive_stream(42, 1);
  bool any_differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    any_differs = any_differs || x != c.next_u64();
  }
  CHECK(any_differs);
}

TEST_CASE("uniform doubles pass a 16-bin chi-square goodness-of-fit test") {
  RngStream r = derive_stream(42, 7);
  constexpr int kSamples = 100000;
  std::array<int, 16> bins{};
  for (int i = 0; i < kSamples; ++i) {
    const double u = r.next_uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    ++bins[static_cast<std::size_t>(u * 16.0)];
  }
  double stat = 0.0;
  const double expected = kSamples / 16.0;
  for (int count : bins) stat += (count - expected) * (count - expected) / expected;
  // Upper 0.001 quantile of chi-square with 15 degrees of freedom.
  CHECK(stat < 37.697);
}

TEST_CASE("gaussian_matrix moments") {
  RngStream r = derive_stream(1, 0);
  const Matrix g = gaussian_matrix(r, 100000, 1);
  double mean = 0.0;
  for (double x : g.data()) mean += x;
  mean /= 1e5;
  double var = 0.0;
  for (double x : g.data()) var += (x - mean) * (x - mean);
  var /= (1e5 - 1.0);
  CHECK(std::abs(mean) < 0.02);
  CHECK(var > 0.97);
  CHECK(var < 1.03);
}

TEST_CASE("gaussian_matrix columns are uncorrelated") {
  RngStream r = derive_stream(2, 0);
  const Matrix g = gaussian_matrix(r, 10000, 2);
  double m0 = 0, m1 = 0;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    m0 += g(i, 0);
    m1 += g(i, 1);
  }
  m0 /= 1e4;
  m1 /= 1e4;
  double c01 = 0, c00 = 0, c11 = 0;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    c01 += (g(i, 0) - m0) * (g(i, 1) - m1);
    c00 += (g(i, 0) - m0) * (g(i, 0) - m0);
    c11 += (g(i, 1) - m1) * (g(i, 1) - m1);
  }
  const double corr = c01 / std::sqrt(c00 * c11);
  CHECK(std::abs(corr) <= 0.05);
}

TEST_CASE("gaussian_matrix is bit-reproducible") {
  RngStream a = derive_stream(99, 3);
  RngStream b = derive_stream(99, 3);
  CHECK(gaussian_matrix(a, 7, 5) == gaussian_matrix(b, 7, 5));
}

TEST_CASE("sphere_vector normalization") {
  RngStream r = derive_stream(3, 0);
  for (int i = 0; i < 100; ++i) {
    const Matrix v = sphere_vector(r, 5);
    CHECK(std::abs(frobenius_norm(v) - 1.0) <= 1e-14);
  }
  for (int i = 0; i < 20; ++i) {
    const double x = sphere_vector(r, 1)(0, 0);
    CHECK((x == 1.0 || x == -1.0));
  }
  CHECK_THROWS_AS(sphere_vector(r, 0), Error);
}

TEST_CASE("sphere_vector mean vanishes by symmetry") {
  RngStream r = derive_stream(4, 0);
  std::array<double, 3> mean{};
  for (int i = 0; i < 100000; ++i) {
    const Matrix v = sphere_vector(r, 3);
    for (std::size_t k = 0; k < 3; ++k) mean[k] += v(k, 0);
  }
  double norm = 0.0;
  for (double m : mean) norm += (m / 1e5) * (m / 1e5);
  CHECK(std::sqrt(norm) < 0.02);
}

TEST_CASE("random_subspace edge dimensions") {
  RngStream r = derive_stream(5, 0);
  const Subspace full = random_subspace(r, 6, 6);
  CHECK(std::abs(std::abs(determinant(full.basis())) - 1.0) < 1e-8);
  const Subspace line = random_subspace(r, 6, 1);
  CHECK(line.dim() == 1);
  CHECK(std::abs(frobenius_norm(line.basis()) - 1.0) < 1e-14);
  CHECK_THROWS_AS(random_subspace(r, 3, 4), Error);
  CHECK_THROWS_AS(random_subspace(r, 3, 0), Error);
}

TEST_CASE("random_subspace: mean projector is (s/N) I") {
  constexpr std::size_t n = 20, s = 4;
  constexpr int draws = 10000;
  RngStream r = derive_stream(6, 0);
  Matrix mean(n, n);
  for (int i = 0; i < draws; ++i) {
    const Subspace w = random_subspace(r, n, s);
    CHECK_MESSAGE(identity_defect(w.basis()) < 1e-10, "draw ", i);
    const Matrix p = w.projector();
    for (std::size_t k = 0; k < n * n; ++k) mean.data()[k] += p.data()[k] / draws;
  }
  double diag = 0.0, off = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) (i == j ? diag : off) += mean(i, j);
  diag /= n;
  off /= n * (n - 1);
  CHECK(diag >= 0.19);
  CHECK(diag <= 0.21);
  CHECK(std::abs(off) <= 0.01);
}
