#include <doctest.h>

#include <cmath>

#include "randfusion/angles.hpp"
#include "randfusion/error.hpp"
#include "support.hpp"

using namespace randfusion;
using namespace testsupport;

namespace {

FusionFrame random_frame(std::uint64_t seed, std::size_t n, std::size_t s, std::size_t k) {
  RngStream r = derive_stream(seed, 0);
  std::vector<Subspace> subs;
  for (std::size_t i = 0; i < k; ++i) subs.push_back(random_subspace(r, n, s));
  return FusionFrame(std::move(subs));
}

}  // namespace

TEST_CASE("hs_inner hand cases") {
  const Subspace a = coordinate_subspace(4, 0, 2);
  CHECK(hs_inner(a, a) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(hs_inner(a, coordinate_subspace(4, 2, 2)) == 0.0);

  const double r = 1.0 / std::sqrt(2.0);
  const Subspace e1 = coordinate_subspace(2, 0, 1);
  const Subspace diag(Matrix::from_rows({{r}, {r}}));
  CHECK(hs_inner(e1, diag) == doctest::Approx(0.5).epsilon(1e-15));

  CHECK_THROWS_AS(hs_inner(e1, coordinate_subspace(3, 0, 1)), Error);
}

TEST_CASE("hs_inner: symmetry, range and explicit projector oracle") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    RngStream r = derive_stream(seed, 5);
    const std::size_t n = 4 + seed % 20;
    const Subspace a = random_subspace(r, n, 1 + seed % 4);
    const Subspace b = random_subspace(r, n, 1 + (seed / 4) % 4);
    const double ab = hs_inner(a, b);
    CHECK(ab == hs_inner(b, a));
    CHECK(ab >= -1e-10);
    CHECK(ab <= static_cast<double>(std::min(a.dim(), b.dim())) + 1e-10);
    CHECK(std::abs(ab - explicit_projector_trace(a, b)) < 1e-10);
  }
}

TEST_CASE("hs_inner is invariant under a common rotation") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RngStream r = derive_stream(seed, 6);
    const Subspace a = random_subspace(r, 10, 3);
    const Subspace b = random_subspace(r, 10, 2);
    const Matrix q = random_subspace(r, 10, 10).basis();
    const double rotated = hs_inner(Subspace(q * a.basis()), Subspace(q * b.basis()));
    CHECK(std::abs(rotated - hs_inner(a, b)) < 1e-9);
  }
}

TEST_CASE("welch_bound arithmetic") {
  CHECK(welch_bound(4, 2, 2) == 0.0);
  CHECK(welch_bound(6, 4, 3) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(welch_bound(4, 2, 1) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(welch_bound(16, 16, 2) == doctest::Approx(2.0 / 15.0).epsilon(1e-15));
  CHECK_THROWS_AS(welch_bound(4, 1, 2), Error);
  CHECK_THROWS_AS(welch_bound(4, 2, 5), Error);
}

TEST_CASE("angle_report: partition, identical subspaces, random") {
  const AngleReport part = angle_report(orthonormal_partition(4, 2));
  CHECK(part.pair_values(0, 1) == 0.0);
  CHECK(part.normalized_min == 0.0);
  CHECK(part.normalized_max == 0.0);
  CHECK(part.normalized_mean == 0.0);
  CHECK(part.welch == 0.0);

  const Subspace w = coordinate_subspace(9, 2, 3);
  const AngleReport same = angle_report(FusionFrame({w, w}));
  CHECK(same.pair_values(0, 1) == doctest::Approx(3.0));
  CHECK(same.normalized_max == doctest::Approx(3.0));  // N/s = 9/3

  const AngleReport rnd = angle_report(random_frame(4, 64, 4, 16));
  CHECK(rnd.normalized_mean >= 0.85);
  CHECK(rnd.normalized_mean <= 1.15);
  CHECK(rnd.normalized_min <= rnd.normalized_mean);
  CHECK(rnd.normalized_mean <= rnd.normalized_max);
  for (std::size_t j = 0; j < 16; ++j) {
    CHECK(std::abs(rnd.pair_values(j, j) - 4.0) < 1e-10);
    for (std::size_t l = 0; l < 16; ++l) CHECK(rnd.pair_values(j, l) == rnd.pair_values(l, j));
  }

  CHECK_THROWS_AS(angle_report(FusionFrame({w})), Error);
}

TEST_CASE("angle_report welch field is NaN for mixed dimensions") {
  const AngleReport r =
      angle_report(FusionFrame({coordinate_subspace(5, 0, 1), coordinate_subspace(5, 1, 2)}));
  CHECK(std::isnan(r.welch));
  CHECK(r.normalized(0, 1) == 0.0);
}

TEST_CASE("pair table sums to tr(S^2)") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const FusionFrame ff = random_frame(seed, 12, 1 + seed % 4, 5 + seed % 3);
    const AngleReport r = angle_report(ff);
    double sum = 0.0;
    for (double v : r.pair_values.data()) sum += v;
    const Matrix s = frame_operator(ff);
    const double tr_s2 = trace(naive_product(s, s));
    CHECK(relative_error(sum, tr_s2) < 1e-8);
  }
}

TEST_CASE("Welch floor holds for random ensembles with Ks >= N") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const AngleReport r = angle_report(random_frame(seed, 8, 2, 6));
    CHECK(r.max_pair_value >= welch_bound(8, 6, 2) - 1e-9);
  }
}

TEST_CASE("equiangular_window values") {
  const Window tiny = equiangular_window(1e-12, 7, 7);
  CHECK(std::abs(tiny.lo - (1.0 - 2e-12)) < 1e-15);
  CHECK(std::abs(tiny.hi - (1.0 + 2e-12)) < 1e-15);

  const Window w = equiangular_window(0.1, 40, 10);
  CHECK(w.lo == doctest::Approx(0.69932913945687878).epsilon(1e-14));
  CHECK(w.hi == doctest::Approx(1.3197617696340303).epsilon(1e-14));

  const Window narrow = equiangular_window(0.1, 10, 10);
  CHECK(narrow.lo == doctest::Approx(0.80421002427389394).epsilon(1e-14));
  CHECK(narrow.hi == doctest::Approx(1.2073808848170152).epsilon(1e-14));
  CHECK(narrow.hi - narrow.lo > 0.0);
  CHECK(narrow.hi - narrow.lo < w.hi - w.lo);
  CHECK(narrow.lo < 1.0);
  CHECK(narrow.hi > 1.0);

  CHECK_THROWS_AS(equiangular_window(0.0, 4, 2), Error);
  CHECK_THROWS_AS(equiangular_window(0.1, 2, 4), Error);
}

TEST_CASE("window_check membership") {
  AngleReport r;
  r.ambient_dim = 4;
  r.dims = {2, 2, 2};
  r.pair_values = Matrix(3, 3);
  // normalized = 4·tr/4 = tr
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t l = 0; l < 3; ++l) r.pair_values(j, l) = j == l ? 2.0 : 1.0;
  const WindowCheck ok = window_check(r, {0.9, 1.1});
  CHECK(ok.all_inside);
  CHECK(ok.pairs.size() == 3);

  r.pair_values(0, 2) = r.pair_values(2, 0) = 1.2;
  const WindowCheck bad = window_check(r, {0.9, 1.1});
  CHECK_FALSE(bad.all_inside);
  CHECK(bad.pairs[0].inside);
  CHECK_FALSE(bad.pairs[1].inside);
  CHECK(bad.pairs[1].j == 0);
  CHECK(bad.pairs[1].l == 2);

  // Closed interval with slack.
  r.pair_values(0, 2) = r.pair_values(2, 0) = 1.1 + 5e-13;
  CHECK(window_check(r, {0.9, 1.1}).all_inside);
}
