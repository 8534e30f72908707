#include "spherequant/resolvent.hpp"

#include <cmath>
#include <stdexcept>

namespace sq {

namespace {

constexpr double kPi = 3.14159265358979323846;

ComplexMatrix eigen_resolvent(const HermitianEig& eig, cplx shift, double lam_scale) {
  const std::size_t n = eig.eigenvalues.size();
  ComplexMatrix scaled = eig.eigenvectors;
  for (std::size_t k = 0; k < n; ++k) {
    const cplx denom = shift - eig.eigenvalues[k];
    if (std::abs(denom) < 1e-12 * lam_scale) {
      throw std::runtime_error("resolvent_sum: contour touches the spectrum");
    }
    const cplx e = 1.0 / denom;
    for (std::size_t i = 0; i < n; ++i) scaled(i, k) *= e;
  }
  return scaled * adjoint(eig.eigenvectors);
}

double spectrum_scale(const HermitianEig& eig) {
  double s = 1.0;
  for (double v : eig.eigenvalues) s = std::max(s, std::abs(v));
  return s;
}

}  // namespace

cplx ContourSpec::point(double s) const {
  return cplx(center + semi_major * std::cos(s), semi_minor * std::sin(s));
}

cplx ContourSpec::tangent(double s) const {
  return cplx(-semi_major * std::sin(s), semi_minor * std::cos(s));
}

ContourSpec build_contour(const ComplexMatrix& h2, double lambda, int nodes) {
  if (lambda == 0.0) {
    throw std::invalid_argument("build_contour: lambda must be nonzero (i*lambda would sit on the real spectrum line)");
  }
  if (nodes < 1) throw std::invalid_argument("build_contour: need at least one node");
  const auto eig = hermitian_eig(h2);
  const double lo = eig.eigenvalues.front();
  const double hi = eig.eigenvalues.back();
  ContourSpec c;
  c.center = 0.5 * (lo + hi);
  c.semi_major = 0.5 * (hi - lo) + 1.0;
  c.semi_minor = 0.5 * std::abs(lambda);
  c.nodes = nodes;
  return c;
}

ComplexMatrix resolvent_sum(const ComplexMatrix& h1, const ComplexMatrix& h2, double lambda,
                            const ContourSpec& contour) {
  if (lambda == 0.0) throw std::invalid_argument("resolvent_sum: lambda must be nonzero");
  if (contour.semi_minor >= std::abs(lambda)) {
    throw std::invalid_argument("resolvent_sum: semi_minor must stay below |lambda|");
  }
  const auto eig1 = hermitian_eig(h1);
  const auto eig2 = hermitian_eig(h2);
  // spec(H2) strictly inside the real diameter
  for (double mu : eig2.eigenvalues) {
    if (mu <= contour.center - contour.semi_major || mu >= contour.center + contour.semi_major) {
      throw std::invalid_argument("resolvent_sum: contour does not enclose spec(H2)");
    }
  }
  const double scale1 = spectrum_scale(eig1);
  const double scale2 = spectrum_scale(eig2);
  const cplx shift(0.0, lambda);  // i lambda

  const int m = contour.nodes;
  const double ds = 2.0 * kPi / m;
  ComplexMatrix acc(h1.rows() * h2.rows(), h1.rows() * h2.rows());
  for (int k = 0; k < m; ++k) {
    const double s = ds * k;
    const cplx z = contour.point(s);
    const cplx w = contour.tangent(s) * ds;
    const ComplexMatrix r1 = eigen_resolvent(eig1, shift - z, scale1 + std::abs(z));
    const ComplexMatrix r2 = eigen_resolvent(eig2, z, scale2 + std::abs(z));
    acc += w * kron(r1, r2);
  }
  acc *= 1.0 / cplx(0.0, 2.0 * kPi);
  return acc;
}

double resolvent_error(const ComplexMatrix& h1, const ComplexMatrix& h2, double lambda,
                       int nodes) {
  const ContourSpec contour = build_contour(h2, lambda, nodes);
  const ComplexMatrix approx = resolvent_sum(h1, h2, lambda, contour);
  const ComplexMatrix direct = shifted_inverse(kron_sum({h1, h2}), cplx(0.0, lambda));
  return spectral_norm(approx - direct) / spectral_norm(direct);
}

}  // namespace sq
