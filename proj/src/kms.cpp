#include "spherequant/kms.hpp"

#include <cmath>
#include <stdexcept>

#include "spherequant/berezin.hpp"
#include "spherequant/spin.hpp"

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

GibbsState gibbs_state(const ComplexMatrix& h, double beta) {
  if (beta <= 0.0 || !std::isfinite(beta)) {
    throw std::invalid_argument("gibbs_state: beta must be positive");
  }
  const auto eig = hermitian_eig(h);  // rejects non-Hermitian input
  const std::size_t n = h.rows();
  const double lam_min = eig.eigenvalues.front();
  std::vector<double> pop(n);
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    pop[i] = std::exp(-beta * (eig.eigenvalues[i] - lam_min));
    z += pop[i];
  }
  ComplexMatrix scaled = eig.eigenvectors;
  for (std::size_t k = 0; k < n; ++k) {
    const double p = pop[k] / z;
    for (std::size_t i = 0; i < n; ++i) scaled(i, k) *= p;
  }
  GibbsState state;
  state.hamiltonian = h;
  state.beta = beta;
  state.rho = scaled * adjoint(eig.eigenvectors);
  return state;
}

ComplexMatrix modular_flow(const ComplexMatrix& h, cplx w, const ComplexMatrix& a) {
  const ComplexMatrix left = matrix_exp_scaled(h, cplx(0.0, 1.0) * w);
  const ComplexMatrix right = matrix_exp_scaled(h, cplx(0.0, -1.0) * w);
  return left * a * right;
}

double kms_boundary_residual(const ComplexMatrix& rho, const ComplexMatrix& h, double beta,
                             const ComplexMatrix& a, const ComplexMatrix& b, double t) {
  if (rho.rows() != a.rows() || a.rows() != b.rows()) {
    throw std::invalid_argument("kms_boundary_residual: dimension mismatch");
  }
  const ComplexMatrix flowed_strip = modular_flow(h, cplx(t, beta), b);
  const ComplexMatrix flowed_real = modular_flow(h, cplx(t, 0.0), b);
  const cplx lhs = trace(rho * a * flowed_strip);
  const cplx rhs = trace(rho * flowed_real * a);
  return std::abs(lhs - rhs) / (1.0 + spectral_norm(a) * spectral_norm(b));
}

double kms_residual(const GibbsState& state, const ComplexMatrix& a, const ComplexMatrix& b,
                    double t) {
  return kms_boundary_residual(state.rho, state.hamiltonian, state.beta, a, b, t);
}

TwoPointFunction two_point_function(const GibbsState& state, const ComplexMatrix& a,
                                    const ComplexMatrix& b, const std::vector<cplx>& points) {
  TwoPointFunction f;
  f.a = a;
  f.b = b;
  f.state = state;
  f.values.reserve(points.size());
  for (const cplx& w : points) {
    if (w.imag() < 0.0 || w.imag() > state.beta) {
      throw std::invalid_argument("two_point_function: point outside the closed strip");
    }
    const cplx value = trace(state.rho * a * modular_flow(state.hamiltonian, w, b));
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
      throw std::runtime_error("two_point_function: non-finite sample");
    }
    f.values.emplace_back(w, value);
  }
  return f;
}

ProductKmsResult product_kms_residual(
    const GibbsState& state_a, const GibbsState& state_b,
    const std::vector<std::pair<ComplexMatrix, ComplexMatrix>>& tensor_samples,
    const std::vector<double>& ts) {
  if (state_a.beta != state_b.beta) {
    throw std::invalid_argument("product_kms_residual: beta mismatch");
  }
  const double beta = state_a.beta;
  const ComplexMatrix rho = kron(state_a.rho, state_b.rho);
  const ComplexMatrix h = kron_sum({state_a.hamiltonian, state_b.hamiltonian});

  ProductKmsResult out;
  std::vector<ComplexMatrix> tensors;
  tensors.reserve(tensor_samples.size());
  for (const auto& [a, b] : tensor_samples) {
    tensors.push_back(kron(a, b));
    const cplx product_value = trace(rho * tensors.back());
    const cplx factor_value = trace(state_a.rho * a) * trace(state_b.rho * b);
    out.max_factorization_error =
        std::max(out.max_factorization_error, std::abs(product_value - factor_value));
  }
  for (const auto& c : tensors) {
    for (const auto& d : tensors) {
      for (double t : ts) {
        out.max_residual = std::max(out.max_residual, kms_boundary_residual(rho, h, beta, c, d, t));
      }
    }
  }
  return out;
}

SweepReport classical_limit_sweep(const CoherentFamily& family, const SitePolynomial& f,
                                  const std::vector<int>& two_j_values) {
  check_range(two_j_values, "classical_limit_sweep");
  if (f.sites() != 1) {
    throw std::invalid_argument("classical_limit_sweep: coherent family needs a one-site polynomial");
  }
  SweepReport report("J", {"value_re", "value_im"});
  for (int two_j : two_j_values) {
    const ComplexMatrix qf = quantize_site(f, two_j);
    const CoherentState omega = coherent_state(two_j, family.theta, family.phi);
    cplx value = 0.0;
    for (std::size_t i = 0; i < omega.amplitudes.size(); ++i) {
      for (std::size_t j = 0; j < omega.amplitudes.size(); ++j) {
        value += std::conj(omega.amplitudes[i]) * qf(i, j) * omega.amplitudes[j];
      }
    }
    report.add_row(0.5 * two_j, {value.real(), value.imag()});
  }
  return report;
}

SweepReport classical_limit_sweep(const GibbsFamily& family, const SitePolynomial& f,
                                  const std::vector<int>& two_j_values) {
  check_range(two_j_values, "classical_limit_sweep");
  if (f.sites() != 1 || family.symbol.sites() != 1) {
    throw std::invalid_argument("classical_limit_sweep: gibbs family needs one-site polynomials");
  }
  SweepReport report("J", {"value_re", "value_im"});
  for (int two_j : two_j_values) {
    const ComplexMatrix h = quantize_site(family.symbol, two_j);
    const GibbsState state = gibbs_state(h, family.beta);
    const cplx value = trace(state.rho * quantize_site(f, two_j));
    report.add_row(0.5 * two_j, {value.real(), value.imag()});
  }
  return report;
}

}  // namespace sq
