#pragma once

#include <vector>

#include "spherequant/models.hpp"
#include "spherequant/polynomial.hpp"
#include "spherequant/sweep_report.hpp"

namespace sq {

// Semiclassical parameter convention: hbar = 1/J = 2/two_j, so defects for
// coordinate polynomials follow their closed forms (e.g. J/(J+1)^2 for the
// commutator defect of z against x).

// || (1/(i hbar)) [Q(f), Q(g)] - Q({f, g}) || on the d-site tensor
// quantization.
double dgr_defect(const SitePolynomial& f, const SitePolynomial& g, int two_j);

// || Q(f) Q(g) - Q(fg) ||
double product_defect(const SitePolynomial& f, const SitePolynomial& g, int two_j);

struct NormGap {
  double quantum_norm = 0.0;
  double classical_norm = 0.0;
  double gap = 0.0;
};

// Compares || Q(f) || against the classical sup norm.
NormGap norm_gap(const SitePolynomial& f, int two_j);

struct AxiomReport {
  double unit_residual = 0.0;     // || Q(1) - 1 ||
  double adjoint_residual = 0.0;  // || Q(f*) - Q(f)* ||
  bool unit_ok = false;
  bool adjoint_ok = false;
};

// Unit preservation and self-adjointness at tolerance 1e-12.
AxiomReport axiom_check(const SitePolynomial& f, int two_j);

enum class DefectKind { dgr, product, norm_gap };

// One row per two_j value (reported as J = two_j/2). Columns: "defect" for
// the defect kinds, {"quantum_norm", "classical_norm", "gap"} for norm_gap.
// g is ignored for norm_gap.
SweepReport defect_sweep(DefectKind kind, const SitePolynomial& f, const SitePolynomial& g,
                         const std::vector<int>& two_j_values);

// Rescaled-Hamiltonian norms against the classical sup norm. For chain
// models the range sweeps two_j (spin operators divided by J+1); for
// curie_weiss it sweeps d using the restricted form divided by d.
SweepReport hamiltonian_norm_limit(const ModelSpec& spec, const std::vector<int>& range);

}  // namespace sq
