#pragma once

#include <vector>

#include "spherequant/matrix.hpp"

namespace sq {

/// Spin-J matrices on C^(2J+1). Basis order: S_z eigenvalue m descending,
/// m = J, J-1, ..., -J.
struct SpinRepresentation {
  int two_j = 0;
  int dim = 0;
  ComplexMatrix sx, sy, sz;
};

// Ladder construction: <m+-1|S_+-|m> = sqrt(J(J+1) - m(m+-1)),
// S_x = (S_+ + S_-)/2, S_y = (S_+ - S_-)/(2i).
SpinRepresentation spin_matrices(int two_j);

/// SU(2) coherent state at direction (theta, phi); amplitude at m is
/// binom(2J, J+m)^(1/2) cos(theta/2)^(J+m) sin(theta/2)^(J-m) e^{i(J-m)phi}.
struct CoherentState {
  int two_j = 0;
  double theta = 0.0;
  double phi = 0.0;
  std::vector<cplx> amplitudes;  // index k corresponds to m = J - k
};

CoherentState coherent_state(int two_j, double theta, double phi);

// Rank-1 projector |Omega><Omega|.
ComplexMatrix coherent_projector(const CoherentState& state);

// Binomial coefficient as a double (stable multiplicative form).
double binomial(int n, int k);

}  // namespace sq
