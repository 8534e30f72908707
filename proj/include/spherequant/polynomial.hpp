#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spherequant/matrix.hpp"

namespace sq {

// Exponents (x^a, y^b, z^c) for one site. Normal form keeps c <= 1 by
// rewriting z^2 = 1 - x^2 - y^2.
using SiteExponents = std::array<int, 3>;
// One exponent triple per site; vector comparison is site-major and then
// lexicographic in (a, b, c), which is also the printing order.
using Monomial = std::vector<SiteExponents>;

struct parse_error : std::runtime_error {
  std::size_t offset;
  parse_error(const std::string& msg, std::size_t off)
      : std::runtime_error("parse error at byte " + std::to_string(off) + ": " + msg),
        offset(off) {}
};

/// Complex polynomial on a d-fold product of unit 2-spheres, stored in
/// normal form (per-site z-degree <= 1, no zero terms).
class SitePolynomial {
public:
  explicit SitePolynomial(int sites);
  static SitePolynomial constant(int sites, cplx value);
  // axis: 0 = x, 1 = y, 2 = z; site is 1-based
  static SitePolynomial coordinate(int sites, int site, int axis);

  int sites() const { return sites_; }
  const std::map<Monomial, cplx>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int total_degree() const;
  int site_degree(int site) const;  // 1-based

  // Accumulates coeff * m and reduces to normal form.
  void add_term(Monomial m, cplx coeff);

  SitePolynomial conjugated() const;  // coefficient-wise conjugation

  SitePolynomial& operator+=(const SitePolynomial& rhs);
  SitePolynomial& operator-=(const SitePolynomial& rhs);
  SitePolynomial& operator*=(cplx s);

private:
  int sites_ = 1;
  std::map<Monomial, cplx> terms_;
};

SitePolynomial operator+(SitePolynomial a, const SitePolynomial& b);
SitePolynomial operator-(SitePolynomial a, const SitePolynomial& b);
SitePolynomial operator*(cplx s, SitePolynomial a);
SitePolynomial operator*(const SitePolynomial& a, const SitePolynomial& b);

bool approx_equal(const SitePolynomial& a, const SitePolynomial& b, double tol = 1e-12);

// Text format, the grammar accepted by parse_poly:
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := number | 'i' | var ('^' uint)? | '(' expr ')' | '-' factor
//   var    := ('x'|'y'|'z') uint          -- the uint is the 1-based site
// Errors carry the byte offset. Exponents above 64 are rejected.
SitePolynomial parse_poly(std::string_view text, int sites);

// Sorted, re-parseable rendering; inverse of parse_poly on normal forms.
std::string to_string(const SitePolynomial& p);

// d/d(coordinate) on the ambient representative; site is 1-based.
SitePolynomial derivative(const SitePolynomial& p, int site, int axis);

// {f, g} = sum_{abc} eps_{abc} x_c (df/dx_a)(dg/dx_b) on a single sphere.
SitePolynomial poisson_bracket_single(const SitePolynomial& f, const SitePolynomial& g);

// Site-wise extension: sum over sites of the single-site bracket with the
// other sites' variables held constant. Coincides with the single-site
// bracket at d = 1.
SitePolynomial poisson_bracket_tensor(const SitePolynomial& f, const SitePolynomial& g);

struct SphereAngles {
  double theta;
  double phi;
};

// Substitutes x = sin(theta)cos(phi), y = sin(theta)sin(phi), z = cos(theta).
cplx evaluate(const SitePolynomial& p, const std::vector<SphereAngles>& angles);

// Evaluates the stored representative at arbitrary ambient points, one
// (x, y, z) triple per site.
cplx evaluate_cartesian(const SitePolynomial& p, const std::vector<std::array<double, 3>>& points);

// Estimated sup of |p| over the product of spheres: a per-site grid scan
// (48x96 at d <= 2, coarser at d = 3, 4) seeds coordinate-wise golden-section
// ascent from the best 20 points. Aimed at 1e-6 relative accuracy for total
// degree <= 6; it is an estimator, not a certified bound. Rejects sites > 4.
double sup_norm(const SitePolynomial& p);

// Multiplies every monomial by (J+1)^(per-site degree), J = two_j / 2.
SitePolynomial scale_coordinates(const SitePolynomial& p, int two_j);

}  // namespace sq
