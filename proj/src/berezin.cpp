#include "spherequant/berezin.hpp"

#include <cmath>
#include <map>

#include "spherequant/spin.hpp"

namespace sq {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::size_t tensor_dim(int two_j, int sites) {
  std::size_t dim = 1;
  for (int j = 0; j < sites; ++j) {
    dim *= static_cast<std::size_t>(two_j + 1);
    if (dim > kDimCap) {
      throw cap_error("quantize_tensor: (2J+1)^d exceeds cap " + std::to_string(kDimCap) +
                      " (2J+1 = " + std::to_string(two_j + 1) + ", d = " +
                      std::to_string(sites) + ")");
    }
  }
  return dim;
}

}  // namespace

ComplexMatrix quantize_site(const SitePolynomial& p, int two_j) {
  return quantize_site(p, two_j, build_grid(two_j, p.total_degree()));
}

ComplexMatrix quantize_site(const SitePolynomial& p, int two_j, const QuadratureGrid& grid) {
  if (p.sites() != 1) throw std::invalid_argument("quantize_site: polynomial must live on one site");
  if (two_j < 1) throw std::invalid_argument("quantize_site: two_j must be >= 1");
  const int dim = two_j + 1;
  ComplexMatrix q(dim, dim);

  const double phi_w = grid.phi_weight();
  std::vector<cplx> harmonics(2 * two_j + 1);  // harmonics[q + two_j] = sum_m w P e^{iq phi_m}
  std::vector<std::array<double, 3>> pt(1);

  for (int it = 0; it < grid.n_theta(); ++it) {
    const double t = grid.t_nodes[it];
    const double theta = std::acos(t);
    const double tw = grid.t_weights[it];

    // phi = 0 makes the amplitudes real
    const CoherentState ref = coherent_state(two_j, theta, 0.0);

    // The projector entry (k, l) carries e^{i(k-l)phi}; accumulate the
    // phi-average of P against each harmonic once, then fan out.
    std::fill(harmonics.begin(), harmonics.end(), cplx(0.0, 0.0));
    const double st = std::sin(theta);
    for (int m = 0; m < grid.n_phi; ++m) {
      const double phi = grid.phi_node(m);
      pt[0] = {st * std::cos(phi), st * std::sin(phi), t};
      const cplx pv = phi_w * evaluate_cartesian(p, pt);
      // e^{iq phi} by incremental rotation, re-anchored every 16 steps to
      // keep the accumulated phase error at rounding level
      const cplx base = std::polar(1.0, phi);
      cplx cur = std::polar(1.0, -two_j * phi);
      for (int qh = -two_j; qh <= two_j; ++qh) {
        harmonics[qh + two_j] += pv * cur;
        if (((qh + two_j) & 15) == 15) {
          cur = std::polar(1.0, (qh + 1) * phi);
        } else {
          cur *= base;
        }
      }
    }

    for (int k = 0; k < dim; ++k) {
      const double rk = ref.amplitudes[k].real();
      if (rk == 0.0) continue;
      for (int l = 0; l < dim; ++l) {
        const double rl = ref.amplitudes[l].real();
        if (rl == 0.0) continue;
        q(k, l) += tw * rk * rl * harmonics[k - l + two_j];
      }
    }
  }

  q *= cplx(dim / (4.0 * kPi));
  return q;
}

ComplexMatrix quantize_tensor(const SitePolynomial& p, int two_j) {
  const int d = p.sites();
  if (d == 1) return quantize_site(p, two_j);
  const std::size_t dim = tensor_dim(two_j, d);

  // every stored monomial is an elementary tensor of per-site monomials
  std::map<SiteExponents, ComplexMatrix> site_images;
  auto site_image = [&](const SiteExponents& e) -> const ComplexMatrix& {
    auto it = site_images.find(e);
    if (it == site_images.end()) {
      SitePolynomial factor(1);
      factor.add_term(Monomial{e}, 1.0);
      it = site_images.emplace(e, quantize_site(factor, two_j)).first;
    }
    return it->second;
  };

  ComplexMatrix q(dim, dim);
  for (const auto& [m, c] : p.terms()) {
    ComplexMatrix term = site_image(m[0]);
    for (int j = 1; j < d; ++j) term = kron(term, site_image(m[j]));
    q += c * std::move(term);
  }
  return q;
}

}  // namespace sq
