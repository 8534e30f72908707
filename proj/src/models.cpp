#include "spherequant/models.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "spherequant/berezin.hpp"
#include "spherequant/spin.hpp"

namespace sq {

namespace {

void check_chain(const ModelSpec& spec, const char* op) {
  if (spec.d < 1) throw std::invalid_argument(std::string(op) + ": d must be >= 1");
  if (spec.kind != ModelKind::curie_weiss && spec.d < 2) {
    throw std::invalid_argument(std::string(op) + ": chain models need d >= 2");
  }
}

// 1 x ... x op x ... x 1 with the operator at chain position j (0-based)
ComplexMatrix embed(const ComplexMatrix& op, int j, int d) {
  std::size_t pre = 1, post = 1;
  for (int k = 0; k < j; ++k) pre *= op.rows();
  for (int k = j + 1; k < d; ++k) post *= op.rows();
  return kron(kron(ComplexMatrix::identity(pre), op), ComplexMatrix::identity(post));
}

}  // namespace

SitePolynomial classical_symbol(const ModelSpec& spec) {
  check_chain(spec, "classical_symbol");
  if (spec.kind == ModelKind::curie_weiss) {
    SitePolynomial h(1);
    const SitePolynomial z = SitePolynomial::coordinate(1, 1, 2);
    const SitePolynomial x = SitePolynomial::coordinate(1, 1, 0);
    h -= cplx(0.5) * (z * z);
    h -= cplx(spec.B) * x;
    return h;
  }
  const int d = spec.d;
  SitePolynomial h(d);
  for (int j = 1; j < d; ++j) {
    if (spec.kind == ModelKind::ising) {
      h -= SitePolynomial::coordinate(d, j, 2) * SitePolynomial::coordinate(d, j + 1, 2);
    } else {
      for (int axis = 0; axis < 3; ++axis) {
        h -= SitePolynomial::coordinate(d, j, axis) * SitePolynomial::coordinate(d, j + 1, axis);
      }
    }
  }
  if (spec.kind == ModelKind::ising && spec.B != 0.0) {
    for (int j = 1; j <= d; ++j) h -= cplx(spec.B) * SitePolynomial::coordinate(d, j, 0);
  }
  return h;
}

ComplexMatrix quantum_hamiltonian(const ModelSpec& spec, int two_j, double spin_scale) {
  check_chain(spec, "quantum_hamiltonian");
  const int d = spec.d;

  if (spec.kind == ModelKind::curie_weiss) {
    if (two_j != 1) {
      throw std::invalid_argument("quantum_hamiltonian: curie_weiss is a qubit model (two_j = 1)");
    }
    std::size_t dim = 1;
    for (int j = 0; j < d; ++j) {
      dim *= 2;
      if (dim > kDimCap) throw cap_error("quantum_hamiltonian: 2^d exceeds cap");
    }
    // sigma = 2S, scaled; the sigma_3 double sum (with i = j kept) is
    // diagonal: entry (sum_j s_j)^2 over the spin pattern of the basis index.
    const double s3 = 2.0 * 0.5 * spin_scale;
    ComplexMatrix h(dim, dim);
    for (std::size_t b = 0; b < dim; ++b) {
      const int ones = std::popcount(b);
      const double mz = s3 * (d - 2 * ones);
      h(b, b) = -mz * mz / (2.0 * d);
    }
    const double sx = 2.0 * 0.5 * spin_scale;  // sigma_x entry
    for (std::size_t b = 0; b < dim; ++b) {
      for (int j = 0; j < d; ++j) {
        const std::size_t flipped = b ^ (std::size_t(1) << (d - 1 - j));
        h(b, flipped) += -spec.B * sx;
      }
    }
    return h;
  }

  const SpinRepresentation rep = spin_matrices(two_j);
  const ComplexMatrix sx = cplx(spin_scale) * rep.sx;
  const ComplexMatrix sy = cplx(spin_scale) * rep.sy;
  const ComplexMatrix sz = cplx(spin_scale) * rep.sz;

  std::size_t dim = 1;
  for (int j = 0; j < d; ++j) {
    dim *= static_cast<std::size_t>(two_j + 1);
    if (dim > kDimCap) throw cap_error("quantum_hamiltonian: (2J+1)^d exceeds cap");
  }

  ComplexMatrix h(dim, dim);
  for (int j = 0; j < d - 1; ++j) {
    if (spec.kind == ModelKind::ising) {
      h -= embed(sz, j, d) * embed(sz, j + 1, d);
    } else {
      h -= embed(sx, j, d) * embed(sx, j + 1, d);
      h -= embed(sy, j, d) * embed(sy, j + 1, d);
      h -= embed(sz, j, d) * embed(sz, j + 1, d);
    }
  }
  if (spec.kind == ModelKind::ising && spec.B != 0.0) {
    for (int j = 0; j < d; ++j) h -= cplx(spec.B) * embed(sx, j, d);
  }
  return h;
}

ComplexMatrix cw_restricted(int d, double B) {
  if (d < 1) throw std::invalid_argument("cw_restricted: d must be >= 1");
  const SpinRepresentation rep = spin_matrices(d);  // two_j = d
  ComplexMatrix h = cplx(-2.0 / d) * (rep.sz * rep.sz);
  h -= cplx(2.0 * B) * rep.sx;
  return h;
}

double cw_defect(int d, double B) {
  if (d < 2) throw std::invalid_argument("cw_defect: d must be >= 2");
  const SitePolynomial symbol = classical_symbol({ModelKind::curie_weiss, 1, B});
  const ComplexMatrix lhs = quantize_site(symbol, d);
  const ComplexMatrix rhs = cplx(1.0 / d) * cw_restricted(d, B);
  return spectral_norm(lhs - rhs);
}

ComplexMatrix dicke_symmetrizer(int d) {
  if (d < 1) throw std::invalid_argument("dicke_symmetrizer: d must be >= 1");
  if (d > 12) throw std::invalid_argument("dicke_symmetrizer: d > 12 not supported");
  const std::size_t dim = std::size_t(1) << d;
  ComplexMatrix v(dim, d + 1);
  std::vector<double> inv_sqrt(d + 1);
  for (int k = 0; k <= d; ++k) inv_sqrt[k] = 1.0 / std::sqrt(binomial(d, k));
  for (std::size_t b = 0; b < dim; ++b) {
    const int k = std::popcount(b);
    v(b, k) = inv_sqrt[k];
  }
  return v;
}

}  // namespace sq
