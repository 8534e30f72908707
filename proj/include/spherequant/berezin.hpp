#pragma once

#include "spherequant/matrix.hpp"
#include "spherequant/polynomial.hpp"
#include "spherequant/quadrature.hpp"

namespace sq {

// Q_J(P) = (2J+1)/(4pi) integral P(Omega) |Omega><Omega| dmu(Omega) for a
// single-site polynomial, evaluated on an exact quadrature grid. Linear,
// unit- and adjoint-preserving.
ComplexMatrix quantize_site(const SitePolynomial& p, int two_j);

// Same map on a caller-supplied grid (exactness probes double the grid).
ComplexMatrix quantize_site(const SitePolynomial& p, int two_j, const QuadratureGrid& grid);

// d-fold tensor extension: each monomial factorizes over sites and is mapped
// to the Kronecker product of the per-site images. Delegates to quantize_site
// at d = 1. Rejects (2J+1)^d above the dimension cap.
ComplexMatrix quantize_tensor(const SitePolynomial& p, int two_j);

}  // namespace sq
