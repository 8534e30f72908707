#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spherequant/berezin.hpp"
#include "spherequant/kms.hpp"
#include "spherequant/models.hpp"
#include "spherequant/resolvent.hpp"
#include "spherequant/sdq.hpp"
#include "spherequant/spin.hpp"

namespace py = pybind11;
using namespace sq;

namespace {

py::array_t<cplx> to_numpy(const ComplexMatrix& m) {
  py::array_t<cplx> out({m.rows(), m.cols()});
  auto buf = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) buf(i, j) = m(i, j);
  return out;
}

ComplexMatrix from_numpy(const py::array_t<cplx, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw std::invalid_argument("expected a 2d array");
  const auto buf = a.unchecked<2>();
  ComplexMatrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  for (py::ssize_t i = 0; i < a.shape(0); ++i)
    for (py::ssize_t j = 0; j < a.shape(1); ++j) m(i, j) = buf(i, j);
  return m;
}

py::dict report_dict(const SweepReport& rep) {
  py::dict d;
  d["parameter"] = rep.parameter_name();
  d["columns"] = rep.columns();
  std::vector<double> params;
  std::vector<std::vector<double>> values;
  for (std::size_t r = 0; r < rep.n_rows(); ++r) {
    params.push_back(rep.parameter(r));
    std::vector<double> row;
    for (std::size_t c = 0; c < rep.columns().size(); ++c) row.push_back(rep.value(r, c));
    values.push_back(std::move(row));
  }
  d["parameters"] = params;
  d["values"] = values;
  if (rep.fit) {
    py::dict f;
    f["exponent"] = rep.fit->exponent;
    f["prefactor"] = rep.fit->prefactor;
    f["r_squared"] = rep.fit->r_squared;
    d["fit"] = f;
  }
  return d;
}

ModelSpec make_spec(const std::string& kind, int d, double b) {
  ModelSpec spec;
  spec.d = d;
  spec.B = b;
  if (kind == "ising") {
    spec.kind = ModelKind::ising;
  } else if (kind == "heisenberg") {
    spec.kind = ModelKind::heisenberg;
  } else if (kind == "curie_weiss") {
    spec.kind = ModelKind::curie_weiss;
  } else {
    throw std::invalid_argument("unknown model kind '" + kind + "'");
  }
  return spec;
}

}  // namespace

PYBIND11_MODULE(spherequant, m) {
  m.doc() = "Berezin quantization workbench on products of 2-spheres";

  py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);
  py::register_exception<cap_error>(m, "CapError", PyExc_RuntimeError);

  py::class_<SitePolynomial>(m, "Poly")
      .def(py::init([](const std::string& text, int sites) { return parse_poly(text, sites); }),
           py::arg("text"), py::arg("sites") = 1)
      .def_property_readonly("sites", &SitePolynomial::sites)
      .def("__str__", [](const SitePolynomial& p) { return to_string(p); })
      .def("__repr__",
           [](const SitePolynomial& p) { return "Poly('" + to_string(p) + "')"; })
      .def("__add__", [](const SitePolynomial& a, const SitePolynomial& b) { return a + b; })
      .def("__sub__", [](const SitePolynomial& a, const SitePolynomial& b) { return a - b; })
      .def("__mul__", [](const SitePolynomial& a, const SitePolynomial& b) { return a * b; })
      .def("__rmul__", [](const SitePolynomial& a, cplx s) { return s * a; })
      .def("conjugated", &SitePolynomial::conjugated)
      .def("total_degree", &SitePolynomial::total_degree)
      .def("evaluate",
           [](const SitePolynomial& p, const std::vector<std::pair<double, double>>& angles) {
             std::vector<SphereAngles> a;
             for (const auto& [theta, phi] : angles) a.push_back({theta, phi});
             return evaluate(p, a);
           })
      .def("sup_norm", [](const SitePolynomial& p) { return sup_norm(p); })
      .def("scale_coordinates",
           [](const SitePolynomial& p, int two_j) { return scale_coordinates(p, two_j); });

  m.def("parse_poly", [](const std::string& text, int sites) { return parse_poly(text, sites); },
        py::arg("text"), py::arg("sites") = 1);
  m.def("poisson_bracket",
        [](const SitePolynomial& f, const SitePolynomial& g) {
          return poisson_bracket_tensor(f, g);
        });

  m.def("spin_matrices", [](int two_j) {
    const auto rep = spin_matrices(two_j);
    return py::make_tuple(to_numpy(rep.sx), to_numpy(rep.sy), to_numpy(rep.sz));
  });
  m.def("coherent_state", [](int two_j, double theta, double phi) {
    const auto st = coherent_state(two_j, theta, phi);
    py::array_t<cplx> out(st.amplitudes.size());
    auto buf = out.mutable_unchecked<1>();
    for (std::size_t k = 0; k < st.amplitudes.size(); ++k) buf(k) = st.amplitudes[k];
    return out;
  });

  m.def("quantize",
        [](const SitePolynomial& p, int two_j) { return to_numpy(quantize_tensor(p, two_j)); },
        py::arg("poly"), py::arg("two_j"));

  m.def("kron", [](const py::array_t<cplx>& a, const py::array_t<cplx>& b) {
    return to_numpy(kron(from_numpy(a), from_numpy(b)));
  });
  m.def("kron_sum", [](const std::vector<py::array_t<cplx>>& hs) {
    std::vector<ComplexMatrix> ms;
    for (const auto& h : hs) ms.push_back(from_numpy(h));
    return to_numpy(kron_sum(ms));
  });
  m.def("spectral_norm",
        [](const py::array_t<cplx>& a) { return spectral_norm(from_numpy(a)); });
  m.def("hermitian_eig", [](const py::array_t<cplx>& a) {
    const auto eig = hermitian_eig(from_numpy(a));
    return py::make_tuple(eig.eigenvalues, to_numpy(eig.eigenvectors));
  });
  m.def("matrix_exp_scaled", [](const py::array_t<cplx>& h, cplx w) {
    return to_numpy(matrix_exp_scaled(from_numpy(h), w));
  });

  m.def("dgr_defect", [](const SitePolynomial& f, const SitePolynomial& g, int two_j) {
    return dgr_defect(f, g, two_j);
  });
  m.def("product_defect", [](const SitePolynomial& f, const SitePolynomial& g, int two_j) {
    return product_defect(f, g, two_j);
  });
  m.def("norm_gap", [](const SitePolynomial& f, int two_j) {
    const NormGap gap = norm_gap(f, two_j);
    return py::make_tuple(gap.quantum_norm, gap.classical_norm, gap.gap);
  });
  m.def("defect_sweep",
        [](const std::string& kind, const SitePolynomial& f, const SitePolynomial& g,
           const std::vector<int>& two_j_values, const std::string& fit_column) {
          DefectKind k;
          if (kind == "dgr") {
            k = DefectKind::dgr;
          } else if (kind == "product") {
            k = DefectKind::product;
          } else if (kind == "norm_gap") {
            k = DefectKind::norm_gap;
          } else {
            throw std::invalid_argument("unknown defect kind '" + kind + "'");
          }
          SweepReport rep = defect_sweep(k, f, g, two_j_values);
          if (!fit_column.empty()) rep.fit = fit_rate(rep, fit_column);
          return report_dict(rep);
        },
        py::arg("kind"), py::arg("f"), py::arg("g"), py::arg("two_j_values"),
        py::arg("fit_column") = "");

  m.def("classical_symbol", [](const std::string& kind, int d, double b) {
    return classical_symbol(make_spec(kind, d, b));
  });
  m.def("quantum_hamiltonian",
        [](const std::string& kind, int d, double b, int two_j, double spin_scale) {
          return to_numpy(quantum_hamiltonian(make_spec(kind, d, b), two_j, spin_scale));
        },
        py::arg("kind"), py::arg("d"), py::arg("B"), py::arg("two_j"),
        py::arg("spin_scale") = 1.0);
  m.def("cw_restricted",
        [](int d, double b) { return to_numpy(cw_restricted(d, b)); });
  m.def("cw_defect", [](int d, double b) { return cw_defect(d, b); });
  m.def("dicke_symmetrizer", [](int d) { return to_numpy(dicke_symmetrizer(d)); });
  m.def("hamiltonian_norm_limit",
        [](const std::string& kind, int d, double b, const std::vector<int>& range) {
          return report_dict(hamiltonian_norm_limit(make_spec(kind, d, b), range));
        });

  m.def("gibbs_state", [](const py::array_t<cplx>& h, double beta) {
    return to_numpy(gibbs_state(from_numpy(h), beta).rho);
  });
  m.def("modular_flow", [](const py::array_t<cplx>& h, cplx w, const py::array_t<cplx>& a) {
    return to_numpy(modular_flow(from_numpy(h), w, from_numpy(a)));
  });
  m.def("kms_residual",
        [](const py::array_t<cplx>& h, double beta, const py::array_t<cplx>& a,
           const py::array_t<cplx>& b, double t) {
          return kms_residual(gibbs_state(from_numpy(h), beta), from_numpy(a), from_numpy(b), t);
        });
  m.def("product_kms_residual",
        [](const py::array_t<cplx>& ha, const py::array_t<cplx>& hb, double beta,
           const std::vector<std::pair<py::array_t<cplx>, py::array_t<cplx>>>& samples,
           const std::vector<double>& ts) {
          const GibbsState sa = gibbs_state(from_numpy(ha), beta);
          const GibbsState sb = gibbs_state(from_numpy(hb), beta);
          std::vector<std::pair<ComplexMatrix, ComplexMatrix>> pairs;
          for (const auto& [a, b] : samples) pairs.emplace_back(from_numpy(a), from_numpy(b));
          const ProductKmsResult res = product_kms_residual(sa, sb, pairs, ts);
          return py::make_tuple(res.max_residual, res.max_factorization_error);
        });
  m.def("classical_limit_sweep",
        [](double theta, double phi, const SitePolynomial& f, const std::vector<int>& range) {
          return report_dict(classical_limit_sweep(CoherentFamily{theta, phi}, f, range));
        });

  m.def("resolvent_error", [](const py::array_t<cplx>& h1, const py::array_t<cplx>& h2,
                              double lambda, int nodes) {
    return resolvent_error(from_numpy(h1), from_numpy(h2), lambda, nodes);
  });
  m.def("resolvent_sum", [](const py::array_t<cplx>& h1, const py::array_t<cplx>& h2,
                            double lambda, int nodes) {
    const ComplexMatrix m1 = from_numpy(h1);
    const ComplexMatrix m2 = from_numpy(h2);
    return to_numpy(resolvent_sum(m1, m2, lambda, build_contour(m2, lambda, nodes)));
  });
}
