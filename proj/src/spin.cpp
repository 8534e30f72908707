#include "spherequant/spin.hpp"

#include <cmath>
#include <stdexcept>

namespace sq {

SpinRepresentation spin_matrices(int two_j) {
  if (two_j < 1) throw std::invalid_argument("spin_matrices: two_j must be >= 1");
  const int dim = two_j + 1;
  const double j = 0.5 * two_j;

  ComplexMatrix sp(dim, dim);  // S_+
  ComplexMatrix sz(dim, dim);
  for (int k = 0; k < dim; ++k) {
    const double m = j - k;  // row k holds m = J - k
    sz(k, k) = m;
    if (k + 1 < dim) {
      // S_+ raises m = J-k-1 (column k+1) to m+1 (row k)
      const double mm = j - (k + 1);
      sp(k, k + 1) = std::sqrt(j * (j + 1.0) - mm * (mm + 1.0));
    }
  }
  const ComplexMatrix sm = adjoint(sp);

  SpinRepresentation rep;
  rep.two_j = two_j;
  rep.dim = dim;
  rep.sx = cplx(0.5) * (sp + sm);
  rep.sy = cplx(0.0, -0.5) * (sp - sm);
  rep.sz = std::move(sz);
  return rep;
}

CoherentState coherent_state(int two_j, double theta, double phi) {
  if (two_j < 1) throw std::invalid_argument("coherent_state: two_j must be >= 1");
  const int dim = two_j + 1;
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);

  CoherentState st;
  st.two_j = two_j;
  st.theta = theta;
  st.phi = phi;
  st.amplitudes.resize(dim);
  for (int k = 0; k < dim; ++k) {
    // m = J - k, so J + m = two_j - k and J - m = k
    const double radial = std::sqrt(binomial(two_j, k)) * std::pow(c, two_j - k) * std::pow(s, k);
    st.amplitudes[k] = radial * std::polar(1.0, k * phi);
  }
  return st;
}

ComplexMatrix coherent_projector(const CoherentState& state) {
  const std::size_t dim = state.amplitudes.size();
  ComplexMatrix p(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      p(i, j) = state.amplitudes[i] * std::conj(state.amplitudes[j]);
  return p;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace sq
