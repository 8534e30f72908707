#include "spherequant/sdq.hpp"

#include <stdexcept>

#include "spherequant/berezin.hpp"

namespace sq {

namespace {

void check_range(const std::vector<int>& range, const char* op) {
  if (range.empty()) throw std::invalid_argument(std::string(op) + ": empty range");
  for (std::size_t i = 1; i < range.size(); ++i) {
    if (range[i] <= range[i - 1]) {
      throw std::invalid_argument(std::string(op) + ": range must be strictly ascending");
    }
  }
}

}  // namespace

double dgr_defect(const SitePolynomial& f, const SitePolynomial& g, int two_j) {
  if (f.sites() != g.sites()) throw std::invalid_argument("dgr_defect: site count mismatch");
  const ComplexMatrix qf = quantize_tensor(f, two_j);
  const ComplexMatrix qg = quantize_tensor(g, two_j);
  const ComplexMatrix qb = quantize_tensor(poisson_bracket_tensor(f, g), two_j);
  const double j = 0.5 * two_j;  // 1/(i hbar) = -i J
  return spectral_norm(cplx(0.0, -j) * commutator(qf, qg) - qb);
}

double product_defect(const SitePolynomial& f, const SitePolynomial& g, int two_j) {
  if (f.sites() != g.sites()) throw std::invalid_argument("product_defect: site count mismatch");
  const ComplexMatrix qf = quantize_tensor(f, two_j);
  const ComplexMatrix qg = quantize_tensor(g, two_j);
  const ComplexMatrix qfg = quantize_tensor(f * g, two_j);
  return spectral_norm(qf * qg - qfg);
}

NormGap norm_gap(const SitePolynomial& f, int two_j) {
  NormGap out;
  out.quantum_norm = spectral_norm(quantize_tensor(f, two_j));
  out.classical_norm = sup_norm(f);
  out.gap = std::abs(out.quantum_norm - out.classical_norm);
  return out;
}

AxiomReport axiom_check(const SitePolynomial& f, int two_j) {
  constexpr double tol = 1e-12;
  const ComplexMatrix qf = quantize_tensor(f, two_j);
  const ComplexMatrix unit =
      quantize_tensor(SitePolynomial::constant(f.sites(), 1.0), two_j);
  AxiomReport rep;
  rep.unit_residual = spectral_norm(unit - ComplexMatrix::identity(unit.rows()));
  rep.adjoint_residual = spectral_norm(quantize_tensor(f.conjugated(), two_j) - adjoint(qf));
  rep.unit_ok = rep.unit_residual <= tol;
  rep.adjoint_ok = rep.adjoint_residual <= tol * (1.0 + spectral_norm(qf));
  return rep;
}

SweepReport defect_sweep(DefectKind kind, const SitePolynomial& f, const SitePolynomial& g,
                         const std::vector<int>& two_j_values) {
  check_range(two_j_values, "defect_sweep");
  const bool gap = kind == DefectKind::norm_gap;
  SweepReport report("J", gap ? std::vector<std::string>{"quantum_norm", "classical_norm", "gap"}
                              : std::vector<std::string>{"defect"});
  // the classical norm does not depend on J
  const double classical = gap ? sup_norm(f) : 0.0;
  for (int two_j : two_j_values) {
    const double j = 0.5 * two_j;
    switch (kind) {
      case DefectKind::dgr:
        report.add_row(j, {dgr_defect(f, g, two_j)});
        break;
      case DefectKind::product:
        report.add_row(j, {product_defect(f, g, two_j)});
        break;
      case DefectKind::norm_gap: {
        const double quantum = spectral_norm(quantize_tensor(f, two_j));
        report.add_row(j, {quantum, classical, std::abs(quantum - classical)});
        break;
      }
    }
  }
  return report;
}

SweepReport hamiltonian_norm_limit(const ModelSpec& spec, const std::vector<int>& range) {
  check_range(range, "hamiltonian_norm_limit");
  const SitePolynomial symbol = classical_symbol(spec);
  const double classical = sup_norm(symbol);

  if (spec.kind == ModelKind::curie_weiss) {
    SweepReport report("d", {"quantum_norm", "classical_norm", "gap"});
    for (int d : range) {
      if (d < 1) throw std::invalid_argument("hamiltonian_norm_limit: d must be >= 1");
      const double quantum = spectral_norm(cw_restricted(d, spec.B)) / d;
      report.add_row(static_cast<double>(d), {quantum, classical, std::abs(quantum - classical)});
    }
    return report;
  }

  SweepReport report("J", {"quantum_norm", "classical_norm", "gap"});
  for (int two_j : range) {
    const double scale = 1.0 / (0.5 * two_j + 1.0);  // 1/(J+1)
    const double quantum = spectral_norm(quantum_hamiltonian(spec, two_j, scale));
    report.add_row(0.5 * two_j, {quantum, classical, std::abs(quantum - classical)});
  }
  return report;
}

}  // namespace sq
