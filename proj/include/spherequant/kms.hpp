#pragma once

#include <utility>
#include <vector>

#include "spherequant/matrix.hpp"
#include "spherequant/polynomial.hpp"
#include "spherequant/sweep_report.hpp"

namespace sq {

/// rho = e^{-beta H} / Tr e^{-beta H} together with its Hamiltonian.
struct GibbsState {
  ComplexMatrix hamiltonian;
  double beta = 1.0;
  ComplexMatrix rho;
};

GibbsState gibbs_state(const ComplexMatrix& h, double beta);

// Heisenberg flow phi_w(a) = e^{iwH} a e^{-iwH}, analytically continued in w.
ComplexMatrix modular_flow(const ComplexMatrix& h, cplx w, const ComplexMatrix& a);

// |Tr(rho a phi_{t+i beta}(b)) - Tr(rho phi_t(b) a)| / (1 + ||a|| ||b||) for
// an arbitrary state/flow pair; rounding-level for exact Gibbs states.
double kms_boundary_residual(const ComplexMatrix& rho, const ComplexMatrix& h, double beta,
                             const ComplexMatrix& a, const ComplexMatrix& b, double t);

double kms_residual(const GibbsState& state, const ComplexMatrix& a, const ComplexMatrix& b,
                    double t);

/// Samples of F(t + is) = omega(a phi_{t+is}(b)) on the closed strip
/// 0 <= s <= beta.
struct TwoPointFunction {
  ComplexMatrix a, b;
  GibbsState state;
  std::vector<std::pair<cplx, cplx>> values;  // (t + is, F)
};

TwoPointFunction two_point_function(const GibbsState& state, const ComplexMatrix& a,
                                    const ComplexMatrix& b, const std::vector<cplx>& points);

struct ProductKmsResult {
  double max_residual = 0.0;
  double max_factorization_error = 0.0;  // |omega(a x b) - omega_A(a) omega_B(b)|
};

// KMS check of the product state kron(rho_A, rho_B) under the diagonal flow
// of the Kronecker-sum Hamiltonian, over all ordered pairs of the supplied
// elementary tensors and all t values.
ProductKmsResult product_kms_residual(
    const GibbsState& state_a, const GibbsState& state_b,
    const std::vector<std::pair<ComplexMatrix, ComplexMatrix>>& tensor_samples,
    const std::vector<double>& ts);

struct CoherentFamily {
  double theta = 0.0;
  double phi = 0.0;
};

struct GibbsFamily {
  SitePolynomial symbol;  // quantized per row as the Hamiltonian
  double beta = 1.0;
};

// Rows of omega_J(Q_J(f)) over two_j (reported as J); columns value_re,
// value_im.
SweepReport classical_limit_sweep(const CoherentFamily& family, const SitePolynomial& f,
                                  const std::vector<int>& two_j_values);
SweepReport classical_limit_sweep(const GibbsFamily& family, const SitePolynomial& f,
                                  const std::vector<int>& two_j_values);

}  // namespace sq
