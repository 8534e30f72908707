#include "spherequant/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace sq {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double QuadratureGrid::phi_node(int m) const { return 2.0 * kPi * m / n_phi; }

double QuadratureGrid::phi_weight() const { return 2.0 * kPi / n_phi; }

double QuadratureGrid::total_weight() const {
  double t = 0.0;
  for (double w : t_weights) t += w;
  return t * 2.0 * kPi;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int mid = (n + 1) / 2;
  for (int i = 1; i <= mid; ++i) {
    double z = std::cos(kPi * (i - 0.25) / (n + 0.5));
    double z_prev, pp;
    do {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      z_prev = z;
      z = z_prev - p1 / pp;
    } while (std::abs(z - z_prev) > 1e-15);
    nodes[i - 1] = -z;
    nodes[n - i] = z;
    weights[i - 1] = 2.0 / ((1.0 - z * z) * pp * pp);
    weights[n - i] = weights[i - 1];
  }
}

QuadratureGrid build_grid(int two_j, int poly_degree) {
  if (two_j < 0 || poly_degree < 0) {
    throw std::invalid_argument("build_grid: arguments must be nonnegative");
  }
  const int order = two_j + poly_degree;
  QuadratureGrid g;
  gauss_legendre(order + 2, g.t_nodes, g.t_weights);
  g.n_phi = 2 * order + 3;
  g.exact_degree = 2 * (order + 2) - 1;
  return g;
}

}  // namespace sq
