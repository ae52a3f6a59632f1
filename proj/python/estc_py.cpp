// pybind11 bindings for the main operations: presets, free-space solutions,
// scans, line location, observables and field maps (standard precision;
// extended-precision runs go through the CLI).

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>

#include "estc/pipeline.hpp"
#include "estc/run_config.hpp"
#include "estc/validate.hpp"

namespace py = pybind11;
using namespace estc;

namespace {

using pycomplex = std::complex<double>;

std::vector<std::vector<pycomplex>> mat_to_py(const Mat4<double>& m) {
  std::vector<std::vector<pycomplex>> out(4, std::vector<pycomplex>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = {m(i, j).re, m(i, j).im};
  return out;
}

std::vector<pycomplex> vec_to_py(const Vec4<double>& v) {
  std::vector<pycomplex> out(4);
  for (int i = 0; i < 4; ++i) out[i] = {v[i].re, v[i].im};
  return out;
}

std::array<double, 3> to_q(const std::vector<double>& q) {
  if (q.size() != 3) throw std::invalid_argument("q must have 3 components");
  return {q[0], q[1], q[2]};
}

py::dict obs_to_py(const ObservableSet<double>& o) {
  py::dict d;
  d["H"] = o.h;
  d["P"] = std::vector<double>{o.p[0], o.p[1], o.p[2]};
  d["alpha"] = std::vector<double>{o.alpha[0], o.alpha[1], o.alpha[2]};
  d["Sigma"] = std::vector<double>{o.sigma[0], o.sigma[1], o.sigma[2]};
  d["max_imag"] = o.max_imag;
  return d;
}

py::dict line_to_py(const LineResult<double>& lr) {
  py::dict d;
  d["label"] = lr.line.label;
  d["branch"] = lr.line.branch + 1;
  d["xi0"] = lr.line.xi0;
  d["R0"] = lr.line.r0;
  d["beta0"] = lr.line.beta0;
  d["delta_xi"] = lr.line.delta_xi;
  d["multiplicity"] = lr.line.multiplicity;
  d["trace_rho1"] = lr.line.trace_rho1;
  d["rho1"] = mat_to_py(lr.line.rho1);
  d["lambda"] = std::vector<double>{lr.lambda[0], lr.lambda[1], lr.lambda[2], lr.lambda[3]};
  d["observables"] = obs_to_py(lr.obs);
  d["c0"] = vec_to_py(lr.c0);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dirac-equation partial solutions in electromagnetic space-time crystals";

  py::class_<CrystalConfig>(m, "CrystalConfig")
      .def_readonly("omega", &CrystalConfig::omega)
      .def("intensity", [](const CrystalConfig& c) { return intensity(c); })
      .def("amplitudes", [](const CrystalConfig& c) {
        std::vector<std::vector<pycomplex>> out(6, std::vector<pycomplex>(3));
        for (int j = 0; j < 6; ++j)
          for (int k = 0; k < 3; ++k) out[j][k] = {c.amplitude[j][k].re, c.amplitude[j][k].im};
        return out;
      });

  m.def("estc1", &estc1, py::arg("a_m"), py::arg("omega") = 0.1,
        "linearly polarized six-wave crystal");
  m.def("estc2", &estc2, py::arg("a_m"), py::arg("omega") = 0.1,
        "circularly polarized six-wave crystal");
  m.def("zero_crystal", &zero_crystal, py::arg("omega") = 0.1);

  m.def("q40", [](const std::vector<double>& q) { return q40(to_q(q)); },
        "free dispersion sqrt(1 + q^2)");
  m.def("free_projectors", [](const std::vector<double>& q) {
    auto p = free_projectors(to_q(q));
    return py::make_tuple(mat_to_py(p.plus), mat_to_py(p.minus));
  });
  m.def("free_basis", [](const std::vector<double>& q) {
    auto c = free_basis(to_q(q));
    std::vector<std::vector<pycomplex>> out;
    for (const auto& ci : c) out.push_back(vec_to_py(ci));
    return out;
  });
  m.def("zero_model", [](const std::vector<double>& q, double q4, double intensity) {
    auto z = zero_model(to_q(q), q4, intensity);
    py::dict d;
    d["S_plus"] = z.s_plus;
    d["S_minus"] = z.s_minus;
    d["R_plus"] = z.r_plus;
    d["R_minus"] = z.r_minus;
    return d;
  });

  m.def("region_size", [](int d) { return build_region(d).size(); });
  m.def("dirac_basis_names", [] { return dirac_basis_names(); });

  m.def(
      "scan",
      [](const CrystalConfig& cfg, const std::vector<double>& q, double xi_lo, double xi_hi,
         int steps, int d, int threads) {
        auto pts = scan<double>(cfg, to_q(q), xi_lo, xi_hi, steps, d, {}, threads);
        py::list out;
        for (const auto& p : pts) {
          py::dict e;
          e["xi"] = p.xi;
          e["R"] = std::vector<double>{p.r[0], p.r[1], p.r[2], p.r[3]};
          if (!p.error.empty()) e["error"] = p.error;
          out.append(e);
        }
        return out;
      },
      py::arg("crystal"), py::arg("q"), py::arg("xi_lo"), py::arg("xi_hi"), py::arg("steps"),
      py::arg("d") = 1, py::arg("threads") = 1);

  m.def(
      "find_lines",
      [](const CrystalConfig& cfg, const std::vector<double>& q, double xi_lo, double xi_hi,
         int d, int steps) {
        FindLinesOptions<double> opt;
        opt.steps = steps;
        auto lines = find_lines<double>(cfg, to_q(q), xi_lo, xi_hi, d, {}, opt);
        py::list out;
        for (const auto& lr : lines) out.append(line_to_py(lr));
        return out;
      },
      py::arg("crystal"), py::arg("q"), py::arg("xi_lo"), py::arg("xi_hi"), py::arg("d") = 1,
      py::arg("steps") = 241);

  m.def(
      "field_map",
      [](const CrystalConfig& cfg, const std::vector<double>& q, double xi0, int d,
         const std::string& op, int axis1, int axis2, int n1, int n2) {
        Region region = build_region(d);
        auto qq = to_q(q);
        double q4 = q40(qq) + xi0;
        auto sys = assemble<double>(region, cfg, qq, q4, {});
        auto fam = solve_family(sys);
        auto ge = generalized_eigen(fam.ud, fam.ue);
        FieldMapSpec spec;
        spec.axis1 = axis1 - 1;
        spec.axis2 = axis2 - 1;
        spec.n1 = n1;
        spec.n2 = n2;
        auto fm = field_map(region, fam.s, ge.vectors[0], qq, q4, cfg.omega, named_operator(op),
                            op, spec);
        return fm.values;
      },
      py::arg("crystal"), py::arg("q"), py::arg("xi0"), py::arg("d"), py::arg("op") = "alpha3",
      py::arg("axis1") = 3, py::arg("axis2") = 4, py::arg("n1") = 32, py::arg("n2") = 32);

  m.def("validate", [] {
    auto checks = validate_report(estc1(5e-4), {0.0, 0.0, 0.02});
    py::list out;
    for (const auto& c : checks) {
      py::dict e;
      e["name"] = c.name;
      e["pass"] = c.pass;
      e["deviation"] = c.deviation;
      e["tolerance"] = c.tolerance;
      out.append(e);
    }
    return out;
  });

  py::register_exception<numeric_error>(m, "NumericError");
  py::register_exception<config_error>(m, "ConfigError");
  py::register_exception<stencil_error>(m, "StencilError");
}
