#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sq {

using cplx = std::complex<double>;

// Dense operations reject anything wider than this; the whole workbench is
// meant to run at desk scale.
inline constexpr std::size_t kDimCap = 4096;

// Relative tolerance used whenever an operation requires Hermitian input.
inline constexpr double kHermTol = 1e-12;

// Thrown when an operation would exceed kDimCap.
struct cap_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense square/rectangular complex matrix, row-major.
class ComplexMatrix {
public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(const std::vector<cplx>& d);
  static ComplexMatrix diagonal_real(const std::vector<double>& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool all_finite() const;

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<cplx>& data() const { return data_; }
  std::vector<cplx>& data() { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cplx s);

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix adjoint(const ComplexMatrix& a);
cplx trace(const ComplexMatrix& a);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
// max entrywise |A - A*|
double hermiticity_defect(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, double tol = kHermTol);

// Kronecker product, first factor outer: (A o B)[(i,k),(j,l)] = A(i,j) B(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
// sum_i 1 o ... o H_i o ... o 1 on the product dimension.
ComplexMatrix kron_sum(const std::vector<ComplexMatrix>& hs);

struct HermitianEig {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // unitary; column k pairs with eigenvalues[k]
};

// Cyclic complex Jacobi. Contracts: ||A - U L U*|| <= 1e-10 (1 + ||A||),
// ||U*U - 1|| <= 1e-10.
HermitianEig hermitian_eig(const ComplexMatrix& a);

// Operator norm. Hermitian input goes through its own eigenvalues, anything
// else through sqrt(max eig(A*A)).
double spectral_norm(const ComplexMatrix& a);

// e^{wH} for Hermitian H and complex w; w = 0 returns the identity.
ComplexMatrix matrix_exp_scaled(const ComplexMatrix& h, cplx w);

// (shift 1 - H)^{-1} for Hermitian H; throws if shift touches the spectrum.
ComplexMatrix shifted_inverse(const ComplexMatrix& h, cplx shift);

}  // namespace sq
