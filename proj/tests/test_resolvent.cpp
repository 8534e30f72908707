#include <doctest.h>

#include <cmath>

#include "spherequant/resolvent.hpp"
#include "spherequant/rng.hpp"

using namespace sq;

namespace {

ComplexMatrix canonical_h1() { return ComplexMatrix::diagonal_real({0.0, 1.0}); }
ComplexMatrix canonical_h2() { return ComplexMatrix::diagonal_real({0.0, 2.0}); }

}  // namespace

TEST_CASE("contour construction") {
  const ContourSpec c = build_contour(canonical_h2(), 1.0, 64);
  CHECK(c.center == doctest::Approx(1.0));
  CHECK(c.semi_major == doctest::Approx(2.0));
  CHECK(c.semi_minor == doctest::Approx(0.5));

  // spectrum of H2 inside the real diameter, pole line Im z = lambda outside
  for (double mu : {0.0, 2.0}) {
    CHECK(mu > c.center - c.semi_major);
    CHECK(mu < c.center + c.semi_major);
  }
  CHECK(c.semi_minor < 1.0);

  CHECK_THROWS_WITH_AS(build_contour(canonical_h2(), 0.0, 64), doctest::Contains("lambda"),
                       std::invalid_argument);
}

TEST_CASE("canonical sample matches the direct inverse") {
  const double lambda = 1.0;
  const ContourSpec c = build_contour(canonical_h2(), lambda, 256);
  const ComplexMatrix r = resolvent_sum(canonical_h1(), canonical_h2(), lambda, c);

  // diagonal sums s in {0, 1, 2, 3}: entries 1/(i - s)
  const std::vector<double> sums = {0.0, 2.0, 1.0, 3.0};
  for (std::size_t k = 0; k < 4; ++k) {
    const cplx expected = 1.0 / (cplx(0.0, lambda) - sums[k]);
    CHECK(std::abs(r(k, k) - expected) <= 1e-8);
  }
  CHECK(std::abs(r(0, 0) - cplx(0.0, -1.0)) <= 1e-8);  // 1/i = -i

  CHECK(resolvent_error(canonical_h1(), canonical_h2(), lambda, 256) <= 1e-8);
}

TEST_CASE("random Hermitian pair converges too") {
  SplitMix64 rng(37);
  const ComplexMatrix h1 = random_hermitian(rng, 3);
  const ComplexMatrix h2 = random_hermitian(rng, 4);
  CHECK(resolvent_error(h1, h2, 2.0, 512) <= 1e-8);
  CHECK(max_abs(commutator(kron(h1, ComplexMatrix::identity(4)),
                           kron(ComplexMatrix::identity(3), h2))) == 0.0);
}

TEST_CASE("trapezoid convergence is exponential until the floor") {
  const double e16 = resolvent_error(canonical_h1(), canonical_h2(), 1.0, 16);
  const double e64 = resolvent_error(canonical_h1(), canonical_h2(), 1.0, 64);
  const double e128 = resolvent_error(canonical_h1(), canonical_h2(), 1.0, 128);
  CHECK(e16 > 100.0 * e64);
  CHECK((e64 >= 100.0 * e128 || e128 <= 1e-12));

  // identity check at the reported accuracy
  const ContourSpec c = build_contour(canonical_h2(), 1.0, 128);
  const ComplexMatrix r = resolvent_sum(canonical_h1(), canonical_h2(), 1.0, c);
  const ComplexMatrix h = kron_sum({canonical_h1(), canonical_h2()});
  const ComplexMatrix residual =
      (cplx(0.0, 1.0) * ComplexMatrix::identity(4) - h) * r - ComplexMatrix::identity(4);
  CHECK(spectral_norm(residual) <= 10.0 * std::max(e128, 1e-12) * spectral_norm(r) + 1e-10);
}

TEST_CASE("lambda sign flip leaves the error magnitude unchanged") {
  const double plus = resolvent_error(canonical_h1(), canonical_h2(), 1.0, 64);
  const double minus = resolvent_error(canonical_h1(), canonical_h2(), -1.0, 64);
  CHECK(std::abs(plus - minus) <= 1e-12 + 1e-6 * plus);
}

TEST_CASE("contour touching the spectrum is rejected") {
  // semi-minor >= |lambda| puts the pole line inside the safety margin
  ContourSpec bad = build_contour(canonical_h2(), 1.0, 64);
  bad.semi_minor = 1.5;
  CHECK_THROWS_AS(resolvent_sum(canonical_h1(), canonical_h2(), 1.0, bad),
                  std::invalid_argument);

  // contour that fails to enclose spec(H2)
  ContourSpec narrow = build_contour(canonical_h2(), 1.0, 64);
  narrow.semi_major = 0.5;
  CHECK_THROWS_AS(resolvent_sum(canonical_h1(), canonical_h2(), 1.0, narrow),
                  std::invalid_argument);
}
