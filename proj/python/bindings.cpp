#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "macksolve/dispersion.hpp"
#include "macksolve/eigensolver.hpp"
#include "macksolve/io.hpp"

namespace py = pybind11;
using namespace macksolve;

namespace {

py::dict residuals_dict(const Residuals& r) {
  py::dict d;
  d["continuity"] = r.continuity;
  d["momentum_x"] = r.momentum_x;
  d["momentum_y"] = r.momentum_y;
  d["energy"] = r.energy;
  d["state"] = r.state;
  d["guard"] = r.guard;
  return d;
}

py::dict fields_dict(const FieldTables& f) {
  py::dict d;
  d["y"] = f.y;
  d["p"] = f.p;
  d["rho"] = f.rho;
  d["u"] = f.u;
  d["v"] = f.v;
  d["t"] = f.t;
  return d;
}

}  // namespace

PYBIND11_MODULE(_macksolve, m) {
  m.doc() = "Inviscid compressible boundary-layer modes: base flows, dispersion roots, shooting oracle";

  auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  auto numerical = py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
  py::register_exception<FloorError>(m, "FloorError", numerical.ptr());
  (void)domain;

  py::class_<BaseFlow>(m, "BaseFlow")
      .def_property_readonly("kind", &BaseFlow::kind_name)
      .def_readonly("grid", &BaseFlow::grid)
      .def_readonly("u", &BaseFlow::u)
      .def_readonly("du", &BaseFlow::du)
      .def_readonly("d2u", &BaseFlow::d2u)
      .def_readonly("d3u", &BaseFlow::d3u)
      .def_readonly("decay_rate", &BaseFlow::decay_rate)
      .def_readonly("wall_shear", &BaseFlow::wall_shear)
      .def("eval", [](const BaseFlow& f, double y) {
        ProfileJet p = f.eval(y);
        return py::make_tuple(p.u, p.du, p.d2u, p.d3u);
      })
      .def("to_json", [](const BaseFlow& f) { return baseflow_json(f).dump(); });

  m.def("blasius", &blasius, py::arg("y_max") = 20.0, py::arg("n") = 2000);
  m.def("tanh_profile", &tanh_profile, py::arg("y_max") = 20.0, py::arg("n") = 2000);
  m.def("baseflow_from_json", [](const std::string& s) { return baseflow_from_json(Json::parse(s)); });

  py::class_<MeanFlow>(m, "MeanFlow")
      .def(py::init<const BaseFlow&, double, double>(), py::arg("flow"), py::arg("mach"), py::arg("gamma") = kGamma,
           py::keep_alive<1, 2>())
      .def_property_readonly("mach", &MeanFlow::mach)
      .def_property_readonly("gamma", &MeanFlow::gamma)
      .def("t0", &MeanFlow::t0)
      .def("F", &MeanFlow::F)
      .def("Fr", &MeanFlow::Fr);

  py::class_<TurningData>(m, "TurningData")
      .def_readonly("cr", &TurningData::cr)
      .def_readonly("u0", &TurningData::u0)
      .def_readonly("y0", &TurningData::y0)
      .def_readonly("yc", &TurningData::yc)
      .def_readonly("dfr0", &TurningData::dfr0);
  m.def("turning_point", &turning_point, py::arg("mean"), py::arg("cr"));
  m.def("supersonic_weight", &supersonic_weight);

  m.def("j_integral", [](const MeanFlow& mean, double cr) {
    JValue j = j_integral(mean, cr);
    return py::make_tuple(j.value, j.error);
  });
  m.def(
      "admissible_intervals",
      [](const MeanFlow& mean, std::vector<double> crs) { return admissible_set_scan(mean, crs).intervals; },
      py::arg("mean"), py::arg("crs"));

  py::class_<DispersionRoot>(m, "DispersionRoot")
      .def_readonly("alpha", &DispersionRoot::alpha)
      .def_readonly("theta", &DispersionRoot::theta)
      .def_readonly("cos_sign", &DispersionRoot::cos_sign)
      .def_readonly("flagged", &DispersionRoot::flagged)
      .def_readonly("residual", &DispersionRoot::residual);

  py::class_<DispersionContext>(m, "DispersionContext")
      .def(py::init<const MeanFlow&, double>(), py::arg("mean"), py::arg("cr"), py::keep_alive<1, 2>())
      .def_property_readonly("supersonic_weight", &DispersionContext::supersonic_weight)
      .def_property_readonly("alpha_min", &DispersionContext::alpha_min)
      .def_property_readonly("alpha_cap", &DispersionContext::alpha_cap)
      .def("value", &DispersionContext::value)
      .def("theta", &DispersionContext::theta)
      .def(
          "roots",
          [](const DispersionContext& c, double lo, double hi) { return real_dispersion_roots(c, lo, hi); },
          py::arg("alpha_lo"), py::arg("alpha_hi"));
  m.def("select_unstable_subsequence", &select_unstable_subsequence, py::arg("roots"), py::arg("sign_target") = 1);
  m.def("growth_rate_fit", [](const std::vector<std::pair<double, double>>& pts) {
    GrowthFit g = growth_rate_fit(pts);
    return py::dict(py::arg("s") = g.s, py::arg("p") = g.p, py::arg("b") = g.b, py::arg("r2") = g.r2);
  });

  m.def(
      "find_eigenvalue",
      [](const MeanFlow& mean, double alpha, cd c_guess) {
        Mode md = find_eigenvalue(mean, alpha, c_guess);
        py::dict d;
        d["alpha"] = md.alpha;
        d["c"] = md.c;
        d["iterations"] = md.iterations;
        d["boundary_residual"] = md.boundary_residual;
        d["y_start"] = md.shot.y_start;
        d["fields"] = fields_dict(md.fields);
        d["dp"] = md.shot.dp;
        d["residuals"] = residuals_dict(md.residuals);
        return d;
      },
      py::arg("mean"), py::arg("alpha"), py::arg("c_guess"));

  m.def(
      "residual_check",
      [](const MeanFlow& mean, double alpha, cd c, const std::vector<double>& y, const std::vector<cd>& p,
         const std::vector<cd>& dp) {
        FieldTables f = reconstruct_fields(mean, alpha, c, y, p, dp);
        return residuals_dict(residual_check(f, mean, alpha, c));
      },
      py::arg("mean"), py::arg("alpha"), py::arg("c"), py::arg("y"), py::arg("p"), py::arg("dp"));
}
