#pragma once

#include <vector>

#include "spherequant/matrix.hpp"

namespace sq {

/// Product rule on S^2: Gauss-Legendre in t = cos(theta), uniform in phi with
/// weight 2*pi/n_phi. Total weight is 4*pi; t^k is integrated exactly for
/// k <= exact_degree.
struct QuadratureGrid {
  std::vector<double> t_nodes;    // Gauss-Legendre nodes on [-1, 1]
  std::vector<double> t_weights;
  int n_phi = 0;
  int exact_degree = 0;

  int n_theta() const { return static_cast<int>(t_nodes.size()); }
  double phi_node(int m) const;
  double phi_weight() const;
  double total_weight() const;
};

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Sized so that a coherent-projector integrand times a polynomial of the
// given degree is integrated exactly: n_theta = two_j + poly_degree + 2,
// n_phi = 2(two_j + poly_degree) + 3.
QuadratureGrid build_grid(int two_j, int poly_degree);

}  // namespace sq
