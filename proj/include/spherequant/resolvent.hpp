#pragma once

#include "spherequant/matrix.hpp"

namespace sq {

/// Ellipse z(s) = center + semi_major cos(s) + i semi_minor sin(s) traversed
/// with M-node periodic trapezoid quadrature. The real diameter must strictly
/// contain spec(H2); semi_minor stays below |lambda| so the poles of the
/// first resolvent factor (on the line Im z = lambda) remain outside.
struct ContourSpec {
  double center = 0.0;
  double semi_major = 1.0;
  double semi_minor = 0.5;
  int nodes = 64;

  cplx point(double s) const;
  cplx tangent(double s) const;  // dz/ds
};

// center = midpoint of spec(H2), semi_major = half-spread + 1,
// semi_minor = |lambda|/2.
ContourSpec build_contour(const ComplexMatrix& h2, double lambda, int nodes);

// (1/2 pi i) sum_m w_m (i lambda - z_m - H1 x 1)^{-1} (z_m - 1 x H2)^{-1},
// which converges to (i lambda - H)^{-1} for H = H1 x 1 + 1 x H2.
ComplexMatrix resolvent_sum(const ComplexMatrix& h1, const ComplexMatrix& h2, double lambda,
                            const ContourSpec& contour);

// || resolvent_sum - direct inverse || / || direct inverse || at M nodes.
double resolvent_error(const ComplexMatrix& h1, const ComplexMatrix& h2, double lambda, int nodes);

}  // namespace sq
