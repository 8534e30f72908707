#include "spherequant/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sq {

namespace {

void check_cap(std::size_t n) {
  if (n > kDimCap) {
    throw cap_error("matrix dimension " + std::to_string(n) + " exceeds cap " +
                    std::to_string(kDimCap));
  }
}

void check_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(op) + ": shape mismatch");
  }
}

void check_square(const ComplexMatrix& a, const char* op) {
  if (!a.is_square()) {
    throw std::invalid_argument(std::string(op) + ": matrix must be square");
  }
}

void check_hermitian(const ComplexMatrix& a, const char* op) {
  check_square(a, op);
  const double defect = hermiticity_defect(a);
  const double bound = kHermTol * (1.0 + max_abs(a));
  if (defect > bound) {
    throw std::invalid_argument(std::string(op) + ": matrix not Hermitian, max|A - A*| = " +
                                std::to_string(defect) + " exceeds 1e-12*(1+max|A|) = " +
                                std::to_string(bound));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw std::invalid_argument("ComplexMatrix: entry count does not match shape");
  }
  if (!all_finite()) {
    throw std::invalid_argument("ComplexMatrix: entries must be finite");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cplx>& d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal_real(const std::vector<double>& d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

bool ComplexMatrix::all_finite() const {
  for (const cplx& v : data_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  check_same_shape(*this, rhs, "operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  check_same_shape(*this, rhs, "operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (cplx& v : data_) v *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("operator*: inner dimension mismatch");
  check_cap(a.rows());
  check_cap(b.cols());
  ComplexMatrix c(a.rows(), b.cols());
  // i-k-j loop: for each output entry the k-terms accumulate in ascending
  // order, so results are run-to-run identical.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        c(i, j) += aik * b(k, j);
      }
    }
  }
  return c;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

cplx trace(const ComplexMatrix& a) {
  check_square(a, "trace");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, i);
  return s;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

double max_abs(const ComplexMatrix& a) {
  double m = 0.0;
  for (const cplx& v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

double hermiticity_defect(const ComplexMatrix& a) {
  check_square(a, "hermiticity_defect");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
  return m;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (!a.is_square()) return false;
  return hermiticity_defect(a) <= tol * (1.0 + max_abs(a));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_cap(a.rows() * b.rows());
  check_cap(a.cols() * b.cols());
  ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return c;
}

ComplexMatrix kron_sum(const std::vector<ComplexMatrix>& hs) {
  if (hs.empty()) throw std::invalid_argument("kron_sum: empty factor list");
  std::size_t total = 1;
  for (const auto& h : hs) {
    check_square(h, "kron_sum");
    total *= h.rows();
    check_cap(total);
  }
  ComplexMatrix sum(total, total);
  for (std::size_t i = 0; i < hs.size(); ++i) {
    std::size_t pre = 1, post = 1;
    for (std::size_t k = 0; k < i; ++k) pre *= hs[k].rows();
    for (std::size_t k = i + 1; k < hs.size(); ++k) post *= hs[k].rows();
    sum += kron(kron(ComplexMatrix::identity(pre), hs[i]), ComplexMatrix::identity(post));
  }
  return sum;
}

HermitianEig hermitian_eig(const ComplexMatrix& a) {
  check_cap(a.rows());
  if (!a.all_finite()) throw std::invalid_argument("hermitian_eig: entries must be finite");
  check_hermitian(a, "hermitian_eig");

  const std::size_t n = a.rows();
  // Work on the exactly-Hermitian part so rounding asymmetry cannot drift.
  ComplexMatrix w(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const cplx v = 0.5 * (a(i, j) + std::conj(a(j, i)));
      w(i, j) = v;
      w(j, i) = std::conj(v);
    }
    w(i, i) = a(i, i).real();
  }
  ComplexMatrix u = ComplexMatrix::identity(n);

  auto off_norm = [&]() {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) s += std::norm(w(p, q));
    return std::sqrt(2.0 * s);
  };
  double scale = 0.0;
  for (const cplx& v : w.data()) scale += std::norm(v);
  scale = std::sqrt(scale);
  const double stop = 1e-15 * (1.0 + scale);

  const int max_sweeps = 60;
  for (int sweep = 0; sweep < max_sweeps && off_norm() > stop; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = w(p, q);
        const double absb = std::abs(apq);
        if (absb <= 1e-300) continue;
        const cplx phase = apq / absb;
        const double app = w(p, p).real();
        const double aqq = w(q, q).real();
        const double tau = (aqq - app) / (2.0 * absb);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // rows p, q: W <- V* W
        for (std::size_t j = 0; j < n; ++j) {
          const cplx wp = w(p, j);
          const cplx wq = w(q, j);
          w(p, j) = c * wp - s * phase * wq;
          w(q, j) = s * wp + c * phase * wq;
        }
        // columns p, q: W <- W V, U <- U V
        for (std::size_t i = 0; i < n; ++i) {
          const cplx wp = w(i, p);
          const cplx wq = w(i, q);
          w(i, p) = c * wp - s * std::conj(phase) * wq;
          w(i, q) = s * wp + c * std::conj(phase) * wq;
          const cplx up = u(i, p);
          const cplx uq = u(i, q);
          u(i, p) = c * up - s * std::conj(phase) * uq;
          u(i, q) = s * up + c * std::conj(phase) * uq;
        }
        // the rotation annihilates (p,q) by construction
        w(p, q) = 0.0;
        w(q, p) = 0.0;
        w(p, p) = w(p, p).real();
        w(q, q) = w(q, q).real();
      }
    }
  }
  if (off_norm() > 1e-8 * (1.0 + scale)) {
    throw std::runtime_error("hermitian_eig: Jacobi iteration failed to converge");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return w(i, i).real() < w(j, j).real(); });

  HermitianEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = w(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = u(i, order[k]);
  }
  return out;
}

double spectral_norm(const ComplexMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  if (a.is_square() && is_hermitian(a)) {
    const auto eig = hermitian_eig(a);
    double m = 0.0;
    for (double v : eig.eigenvalues) m = std::max(m, std::abs(v));
    return m;
  }
  const ComplexMatrix gram = adjoint(a) * a;
  const auto eig = hermitian_eig(gram);
  const double top = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();
  return std::sqrt(std::max(0.0, top));
}

ComplexMatrix matrix_exp_scaled(const ComplexMatrix& h, cplx w) {
  check_hermitian(h, "matrix_exp_scaled");
  if (w == cplx(0.0, 0.0)) return ComplexMatrix::identity(h.rows());
  const auto eig = hermitian_eig(h);
  const std::size_t n = h.rows();
  ComplexMatrix scaled = eig.eigenvectors;
  for (std::size_t k = 0; k < n; ++k) {
    const cplx e = std::exp(w * eig.eigenvalues[k]);
    for (std::size_t i = 0; i < n; ++i) scaled(i, k) *= e;
  }
  return scaled * adjoint(eig.eigenvectors);
}

ComplexMatrix shifted_inverse(const ComplexMatrix& h, cplx shift) {
  check_hermitian(h, "shifted_inverse");
  const auto eig = hermitian_eig(h);
  const std::size_t n = h.rows();
  double lam_scale = 1.0;
  for (double v : eig.eigenvalues) lam_scale = std::max(lam_scale, std::abs(v));
  ComplexMatrix scaled = eig.eigenvectors;
  for (std::size_t k = 0; k < n; ++k) {
    const cplx denom = shift - eig.eigenvalues[k];
    if (std::abs(denom) < 1e-12 * lam_scale) {
      throw std::runtime_error("shifted_inverse: shift touches the spectrum");
    }
    const cplx e = 1.0 / denom;
    for (std::size_t i = 0; i < n; ++i) scaled(i, k) *= e;
  }
  return scaled * adjoint(eig.eigenvectors);
}

}  // namespace sq
