#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "spherequant/polynomial.hpp"

using namespace sq;

namespace {

const cplx kI(0.0, 1.0);

SitePolynomial coord(int sites, int site, char axis) {
  return SitePolynomial::coordinate(sites, site, axis == 'x' ? 0 : (axis == 'y' ? 1 : 2));
}

bool exact_equal(const SitePolynomial& a, const SitePolynomial& b) {
  if (a.sites() != b.sites() || a.terms().size() != b.terms().size()) return false;
  auto ib = b.terms().begin();
  for (const auto& [m, c] : a.terms()) {
    if (m != ib->first || c != ib->second) return false;
    ++ib;
  }
  return true;
}

}  // namespace

TEST_CASE("parse applies the sphere relation") {
  const SitePolynomial p = parse_poly("z1^2", 1);
  SitePolynomial expected = SitePolynomial::constant(1, 1.0);
  expected -= coord(1, 1, 'x') * coord(1, 1, 'x');
  expected -= coord(1, 1, 'y') * coord(1, 1, 'y');
  CHECK(exact_equal(p, expected));
}

TEST_CASE("parse simple expressions") {
  const SitePolynomial p = parse_poly("x1*y2 + 2", 2);
  CHECK(p.terms().size() == 2);
  SitePolynomial expected = coord(2, 1, 'x') * coord(2, 2, 'y');
  expected += SitePolynomial::constant(2, 2.0);
  CHECK(exact_equal(p, expected));

  CHECK(exact_equal(parse_poly("-(x1 - y1)*2", 1),
                    cplx(-2.0) * (coord(1, 1, 'x') - coord(1, 1, 'y'))));
  CHECK(exact_equal(parse_poly("0.5*x1^3", 1),
                    cplx(0.5) * (coord(1, 1, 'x') * coord(1, 1, 'x') * coord(1, 1, 'x'))));
  CHECK(exact_equal(parse_poly("i*y1", 1), kI * coord(1, 1, 'y')));
}

TEST_CASE("parse errors carry byte offsets") {
  CHECK_THROWS_WITH_AS(parse_poly("x3", 2), doctest::Contains("site index 3 exceeds 2"),
                       parse_error);
  CHECK_THROWS_WITH_AS(parse_poly("x1^65", 1), doctest::Contains("exponent 65 exceeds 64"),
                       parse_error);
  CHECK_THROWS_AS(parse_poly("x1 + ", 1), parse_error);
  CHECK_THROWS_AS(parse_poly("(x1", 1), parse_error);
  CHECK_THROWS_AS(parse_poly("x", 1), parse_error);
  CHECK_THROWS_AS(parse_poly("x1 x2", 2), parse_error);

  try {
    parse_poly("x1 + @", 1);
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.offset == 5);
  }
}

TEST_CASE("product respects the sphere relation and ring laws") {
  const SitePolynomial z = coord(1, 1, 'z');
  const SitePolynomial zz = z * z;
  CHECK(exact_equal(zz, parse_poly("1 - x1^2 - y1^2", 1)));

  SplitMix64 rng(3);
  const SitePolynomial p = sq::test::random_poly(rng, 1, 3, 4, true);
  CHECK(exact_equal(SitePolynomial::constant(1, 1.0) * p, p));

  const SitePolynomial x = coord(1, 1, 'x');
  const SitePolynomial y = coord(1, 1, 'y');
  CHECK(exact_equal((x + y) * (x - y), x * x - y * y));

  // commutativity and distributivity within tolerance
  const SitePolynomial q = sq::test::random_poly(rng, 1, 3, 4, true);
  const SitePolynomial r = sq::test::random_poly(rng, 1, 2, 3, true);
  CHECK(approx_equal(p * q, q * p, 1e-14));
  CHECK(approx_equal(p * (q + r), p * q + p * r, 1e-13));
}

TEST_CASE("coordinate brackets") {
  const SitePolynomial x = coord(1, 1, 'x');
  const SitePolynomial y = coord(1, 1, 'y');
  const SitePolynomial z = coord(1, 1, 'z');
  CHECK(exact_equal(poisson_bracket_single(z, x), y));
  CHECK(exact_equal(poisson_bracket_single(x, y), z));
  CHECK(exact_equal(poisson_bracket_single(y, z), x));
  CHECK(poisson_bracket_single(x, x).is_zero());

  CHECK_THROWS_AS(poisson_bracket_single(coord(2, 1, 'x'), coord(2, 1, 'y')),
                  std::invalid_argument);
}

TEST_CASE("tensor bracket on two sites") {
  const SitePolynomial x1 = coord(2, 1, 'x');
  const SitePolynomial y1 = coord(2, 1, 'y');
  const SitePolynomial y2 = coord(2, 2, 'y');
  const SitePolynomial z1 = coord(2, 1, 'z');
  const SitePolynomial z2 = coord(2, 2, 'z');

  CHECK(poisson_bracket_tensor(x1, y2).is_zero());
  CHECK(exact_equal(poisson_bracket_tensor(z1, x1), y1));
  CHECK(exact_equal(poisson_bracket_tensor(z1 * z2, x1), y1 * z2));

  CHECK_THROWS_AS(poisson_bracket_tensor(coord(1, 1, 'x'), coord(2, 1, 'x')),
                  std::invalid_argument);

  // d = 1 tensor bracket equals the single-site bracket
  SplitMix64 rng(17);
  for (int it = 0; it < 5; ++it) {
    const SitePolynomial f = sq::test::random_poly(rng, 1, 3, 4);
    const SitePolynomial g = sq::test::random_poly(rng, 1, 3, 4);
    CHECK(exact_equal(poisson_bracket_tensor(f, g), poisson_bracket_single(f, g)));
  }
}

TEST_CASE("bracket agrees with the finite-difference oracle") {
  SplitMix64 rng(29);
  for (int d : {1, 2}) {
    for (int it = 0; it < 10; ++it) {
      const SitePolynomial f = sq::test::random_poly(rng, d, 3, 4);
      const SitePolynomial g = sq::test::random_poly(rng, d, 3, 4);
      const SitePolynomial br = poisson_bracket_tensor(f, g);
      for (int pt = 0; pt < 4; ++pt) {
        const auto pts = sq::test::random_sphere_points(rng, d);
        const cplx direct = evaluate_cartesian(br, pts);
        const cplx fd = sq::test::fd_bracket_at(f, g, pts);
        CHECK(std::abs(direct - fd) <= 1e-6 * (1.0 + std::abs(direct)));
      }
    }
  }
}

TEST_CASE("bracket is antisymmetric and a derivation") {
  SplitMix64 rng(41);
  for (int d : {1, 2}) {
    for (int it = 0; it < 5; ++it) {
      const SitePolynomial f = sq::test::random_poly(rng, d, 2, 3);
      const SitePolynomial g = sq::test::random_poly(rng, d, 2, 3);
      const SitePolynomial h = sq::test::random_poly(rng, d, 2, 3);

      // antisymmetry
      CHECK(approx_equal(poisson_bracket_tensor(f, g),
                         cplx(-1.0) * poisson_bracket_tensor(g, f), 1e-13));
      // Leibniz
      CHECK(approx_equal(poisson_bracket_tensor(f, g * h),
                         poisson_bracket_tensor(f, g) * h + g * poisson_bracket_tensor(f, h),
                         1e-12));
    }
  }
}

TEST_CASE("Jacobi identity") {
  SplitMix64 rng(43);
  for (int d : {1, 2}) {
    for (int it = 0; it < 20; ++it) {
      const SitePolynomial f = sq::test::random_poly(rng, d, 2, 3);
      const SitePolynomial g = sq::test::random_poly(rng, d, 2, 3);
      const SitePolynomial h = sq::test::random_poly(rng, d, 2, 3);
      SitePolynomial acc = poisson_bracket_tensor(f, poisson_bracket_tensor(g, h));
      acc += poisson_bracket_tensor(g, poisson_bracket_tensor(h, f));
      acc += poisson_bracket_tensor(h, poisson_bracket_tensor(f, g));
      CHECK(approx_equal(acc, SitePolynomial(d), 1e-10));
    }
  }
}

TEST_CASE("bracket conjugation") {
  SplitMix64 rng(47);
  for (int it = 0; it < 10; ++it) {
    const SitePolynomial f = sq::test::random_poly(rng, 1, 3, 4, true);
    const SitePolynomial g = sq::test::random_poly(rng, 1, 3, 4, true);
    CHECK(approx_equal(poisson_bracket_single(f, g).conjugated(),
                       poisson_bracket_single(f.conjugated(), g.conjugated()), 1e-12));
  }
}

TEST_CASE("the sphere relation is invisible to the normal form and the bracket") {
  SplitMix64 rng(53);
  // x^2 + y^2 + z^2 - 1 normal-forms to zero
  SitePolynomial rel(1);
  for (int axis = 0; axis < 3; ++axis) {
    const SitePolynomial c = SitePolynomial::coordinate(1, 1, axis);
    rel += c * c;
  }
  rel -= SitePolynomial::constant(1, 1.0);
  CHECK(rel.is_zero());

  for (int it = 0; it < 10; ++it) {
    const SitePolynomial f = sq::test::random_poly(rng, 1, 3, 3);
    const SitePolynomial g = sq::test::random_poly(rng, 1, 3, 3);
    const SitePolynomial m = sq::test::random_poly(rng, 1, 2, 1);
    const SitePolynomial f_shifted = f + cplx(rng.uniform(-2.0, 2.0)) * (rel * m);
    CHECK(approx_equal(f_shifted, f, 1e-12));
    CHECK(approx_equal(poisson_bracket_single(f_shifted, g), poisson_bracket_single(f, g),
                       1e-12));
  }
}

TEST_CASE("evaluate at angles") {
  const SitePolynomial z = coord(1, 1, 'z');
  CHECK(std::abs(evaluate(z, {{0.0, 0.0}}) - 1.0) == 0.0);

  const SitePolynomial x = coord(1, 1, 'x');
  CHECK(std::abs(evaluate(x, {{1.5707963267948966, 0.0}}) - 1.0) <= 1e-15);

  const SitePolynomial zz = parse_poly("1 - x1^2 - y1^2", 1);
  SplitMix64 rng(59);
  for (int it = 0; it < 8; ++it) {
    const double theta = rng.uniform(0.0, 3.141592653589793);
    const double phi = rng.uniform(0.0, 6.283185307179586);
    const double expected = std::cos(theta) * std::cos(theta);
    CHECK(std::abs(evaluate(zz, {{theta, phi}}) - expected) <= 1e-13);
  }

  CHECK_THROWS_AS(evaluate(z, {{0.0, 0.0}, {0.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("sup_norm on model-scale polynomials") {
  CHECK(sup_norm(coord(1, 1, 'z')) == doctest::Approx(1.0).epsilon(1e-8));

  const SitePolynomial m = cplx(-1.0) * (coord(2, 1, 'z') * coord(2, 2, 'z'));
  CHECK(sup_norm(m) == doctest::Approx(1.0).epsilon(1e-8));

  const SitePolynomial half_z2 = cplx(-0.5) * parse_poly("z1^2", 1);
  CHECK(sup_norm(half_z2) == doctest::Approx(0.5).epsilon(1e-8));

  CHECK(sup_norm(SitePolynomial(1)) == 0.0);

  SitePolynomial too_many(5);
  CHECK_THROWS_AS(sup_norm(too_many), std::invalid_argument);
}

TEST_CASE("print round-trips exactly over a mixed corpus") {
  std::vector<std::string> fixed = {
      "0",
      "1",
      "-1",
      "x1",
      "-x1",
      "2*x1",
      "x1 + y1 + z1",
      "x1*y1*z1",
      "x1^2 - y1^2",
      "1 - x1^2 - y1^2",
      "0.5*z1 - 0.25",
      "i",
      "-i",
      "2*i",
      "i*x1 - y1",
      "(1+2*i)*x1",
      "(0.125-0.5*i)*z1^1 + 3",
      "x1*y1 - 0.75*z1",
      "1e-3*x1",
      "2.5e2 - z1",
  };

  SplitMix64 rng(61);
  int checked = 0;
  for (const std::string& text : fixed) {
    const SitePolynomial p = parse_poly(text, 1);
    const SitePolynomial q = parse_poly(to_string(p), 1);
    CHECK(exact_equal(p, q));
    ++checked;
  }
  for (int it = 0; it < 30; ++it) {
    const int d = 1 + it % 3;
    const SitePolynomial p = sq::test::random_poly(rng, d, 4, 5, it % 2 == 1);
    const SitePolynomial q = parse_poly(to_string(p), d);
    CHECK(exact_equal(p, q));
    ++checked;
  }
  CHECK(checked == 50);
}

TEST_CASE("printing is sorted site-major") {
  const SitePolynomial p = parse_poly("z2*x1 + y1 + 4", 2);
  CHECK(to_string(p) == "4 + y1 + x1*z2");
}

TEST_CASE("constructor and arithmetic preconditions") {
  CHECK_THROWS_AS(SitePolynomial(0), std::invalid_argument);
  CHECK_THROWS_AS(SitePolynomial::coordinate(1, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(SitePolynomial::coordinate(1, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(coord(1, 1, 'x') * coord(2, 1, 'x'), std::invalid_argument);
  CHECK_THROWS_AS(scale_coordinates(coord(1, 1, 'x'), 0), std::invalid_argument);
  CHECK_THROWS_AS(derivative(coord(2, 1, 'x'), 3, 0), std::invalid_argument);
}

TEST_CASE("scale_coordinates multiplies by (J+1)^degree per site") {
  const SitePolynomial p = parse_poly("x1*z2^1 + z1", 2);
  const SitePolynomial scaled = scale_coordinates(p, 2);  // J = 1, J+1 = 2
  SitePolynomial expected = cplx(4.0) * (coord(2, 1, 'x') * coord(2, 2, 'z'));
  expected += cplx(2.0) * coord(2, 1, 'z');
  CHECK(exact_equal(scaled, expected));
}
