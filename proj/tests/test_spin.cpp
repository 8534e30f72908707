#include <doctest.h>

#include <cmath>

#include "spherequant/berezin.hpp"
#include "spherequant/matrix.hpp"
#include "spherequant/rng.hpp"
#include "spherequant/spin.hpp"

using namespace sq;

namespace {
constexpr double kPi = 3.14159265358979323846;
const cplx kI(0.0, 1.0);
}  // namespace

TEST_CASE("spin-1/2 matrices by hand") {
  const auto rep = spin_matrices(1);
  CHECK(max_abs_diff(rep.sz, ComplexMatrix::diagonal_real({0.5, -0.5})) <= 1e-15);
  CHECK(max_abs_diff(rep.sx, ComplexMatrix(2, 2, {0.0, 0.5, 0.5, 0.0})) <= 1e-15);
  CHECK(max_abs_diff(rep.sy, ComplexMatrix(2, 2, {0.0, -0.5 * kI, 0.5 * kI, 0.0})) <= 1e-15);

  CHECK(spectral_norm(spin_matrices(2).sy) == doctest::Approx(1.0));

  CHECK_THROWS_AS(spin_matrices(0), std::invalid_argument);
}

TEST_CASE("su(2) commutation and Casimir invariants") {
  for (int two_j : {1, 2, 3, 5, 8, 14}) {
    const auto rep = spin_matrices(two_j);
    const double j = 0.5 * two_j;

    CHECK(max_abs(commutator(rep.sx, rep.sy) - kI * rep.sz) <= 1e-12);
    CHECK(max_abs(commutator(rep.sy, rep.sz) - kI * rep.sx) <= 1e-12);
    CHECK(max_abs(commutator(rep.sz, rep.sx) - kI * rep.sy) <= 1e-12);

    const ComplexMatrix casimir = rep.sx * rep.sx + rep.sy * rep.sy + rep.sz * rep.sz;
    CHECK(max_abs_diff(casimir, cplx(j * (j + 1.0)) * ComplexMatrix::identity(rep.dim)) <= 1e-12);

    // S_z diagonal, descending
    for (int k = 0; k < rep.dim; ++k) CHECK(rep.sz(k, k).real() == doctest::Approx(j - k));
  }
}

TEST_CASE("coherent state basics") {
  const CoherentState north = coherent_state(1, 0.0, 1.234);
  CHECK(north.amplitudes[0] == cplx(1.0, 0.0));
  CHECK(north.amplitudes[1] == cplx(0.0, 0.0));

  const CoherentState eq = coherent_state(1, 0.5 * kPi, 0.0);
  CHECK(std::abs(eq.amplitudes[0] - 1.0 / std::sqrt(2.0)) <= 1e-15);
  CHECK(std::abs(eq.amplitudes[1] - 1.0 / std::sqrt(2.0)) <= 1e-15);

  SplitMix64 rng(7);
  for (int two_j : {1, 3, 6, 11}) {
    const CoherentState st = coherent_state(two_j, rng.uniform(0.0, kPi), rng.uniform(0.0, 2.0 * kPi));
    double norm2 = 0.0;
    for (const cplx& a : st.amplitudes) norm2 += std::norm(a);
    CHECK(std::abs(norm2 - 1.0) <= 1e-13);
  }
}

TEST_CASE("lower symbol of S_z is J cos(theta)") {
  SplitMix64 rng(19);
  for (int two_j : {1, 2, 4, 8}) {
    const auto rep = spin_matrices(two_j);
    const double j = 0.5 * two_j;
    for (int it = 0; it < 6; ++it) {
      const double theta = rng.uniform(0.0, kPi);
      const double phi = rng.uniform(0.0, 2.0 * kPi);
      const CoherentState st = coherent_state(two_j, theta, phi);
      // direct summation of <Omega| S_z |Omega>
      cplx val = 0.0;
      for (int k = 0; k <= two_j; ++k) {
        val += std::conj(st.amplitudes[k]) * rep.sz(k, k) * st.amplitudes[k];
      }
      CHECK(std::abs(val - j * std::cos(theta)) <= 1e-12 * (1.0 + j));
    }
  }
}

TEST_CASE("coherent projector is a rank-1 Hermitian idempotent") {
  SplitMix64 rng(23);
  const ComplexMatrix north = coherent_projector(coherent_state(3, 0.0, 0.0));
  ComplexMatrix e0(4, 4);
  e0(0, 0) = 1.0;
  CHECK(max_abs_diff(north, e0) == 0.0);

  for (int it = 0; it < 5; ++it) {
    const int two_j = 1 + static_cast<int>(rng.uniform(0.0, 6.0));
    const CoherentState st =
        coherent_state(two_j, rng.uniform(0.0, kPi), rng.uniform(0.0, 2.0 * kPi));
    const ComplexMatrix p = coherent_projector(st);
    CHECK(max_abs_diff(p * p, p) <= 1e-13);
    CHECK(hermiticity_defect(p) <= 1e-15);
    CHECK(std::abs(trace(p) - 1.0) <= 1e-13);
  }
}

TEST_CASE("overlap law |<Omega|Omega'>|^2 = cos^{4J}(Theta/2)") {
  SplitMix64 rng(29);
  for (int two_j : {1, 2, 4, 6}) {
    for (int it = 0; it < 6; ++it) {
      const double t1 = rng.uniform(0.0, kPi), p1 = rng.uniform(0.0, 2.0 * kPi);
      const double t2 = rng.uniform(0.0, kPi), p2 = rng.uniform(0.0, 2.0 * kPi);
      const CoherentState a = coherent_state(two_j, t1, p1);
      const CoherentState b = coherent_state(two_j, t2, p2);
      cplx ov = 0.0;
      for (int k = 0; k <= two_j; ++k) ov += std::conj(a.amplitudes[k]) * b.amplitudes[k];
      const double cos_geo = std::sin(t1) * std::sin(t2) * std::cos(p1 - p2) +
                             std::cos(t1) * std::cos(t2);
      const double expected = std::pow(0.5 * (1.0 + cos_geo), two_j);  // cos^2(Theta/2) = (1+cos Theta)/2
      CHECK(std::abs(std::norm(ov) - expected) <= 1e-12);
    }
  }
}

TEST_CASE("resolution of identity under the exact grid") {
  for (int two_j : {1, 2, 5}) {
    const ComplexMatrix q = quantize_site(SitePolynomial::constant(1, 1.0), two_j);
    CHECK(max_abs_diff(q, ComplexMatrix::identity(two_j + 1)) <= 1e-12);
  }
}

TEST_CASE("z-rotation maps the projector phase to zero") {
  const int two_j = 4;
  const double theta = 1.1, phi = 2.3;
  const auto rep = spin_matrices(two_j);
  const ComplexMatrix p = coherent_projector(coherent_state(two_j, theta, phi));
  const ComplexMatrix p0 = coherent_projector(coherent_state(two_j, theta, 0.0));
  const ComplexMatrix u = matrix_exp_scaled(rep.sz, cplx(0.0, phi));  // e^{i phi S_z}
  CHECK(max_abs_diff(u * p * adjoint(u), p0) <= 1e-12);
}
