#pragma once

#include "spherequant/matrix.hpp"
#include "spherequant/polynomial.hpp"

namespace sq {

enum class ModelKind { ising, heisenberg, curie_weiss };

struct ModelSpec {
  ModelKind kind = ModelKind::ising;
  int d = 2;        // site count (curie_weiss: particle count)
  double B = 0.0;   // transverse field; unused by heisenberg
};

// Classical symbols on the d-fold product of spheres (curie_weiss lives on a
// single sphere):
//   ising:       -sum_{j<d} z_j z_{j+1} - B sum_j x_j
//   heisenberg:  -sum_{j<d} (x_j x_{j+1} + y_j y_{j+1} + z_j z_{j+1})
//   curie_weiss: -(z^2/2 + B x), stored in normal form
SitePolynomial classical_symbol(const ModelSpec& spec);

// Kronecker-product Hamiltonians on (C^{2J+1})^{x d}. spin_scale multiplies
// every spin operator before assembly (1/(J+1) gives the norm-limit scaling).
// curie_weiss requires two_j = 1 and uses Pauli matrices sigma = 2S:
//   -(1/2d) sum_{i,j} sigma_3(i) sigma_3(j) - B sum_j sigma_x(j),
// the double sum including i = j.
ComplexMatrix quantum_hamiltonian(const ModelSpec& spec, int two_j, double spin_scale = 1.0);

// Curie-Weiss restricted to the (d+1)-dimensional symmetric subspace, built
// directly in the spin-(d/2) representation: -(2/d) S_z^2 - 2B S_x.
ComplexMatrix cw_restricted(int d, double B);

// || Q_{two_j=d}(curie_weiss symbol) - cw_restricted(d, B)/d ||; the per-site
// comparison that decays like 1/d.
double cw_defect(int d, double B);

// 2^d x (d+1) isometry whose columns are the normalized Dicke states with
// k excitations, k ascending. d is capped at 12.
ComplexMatrix dicke_symmetrizer(int d);

}  // namespace sq
