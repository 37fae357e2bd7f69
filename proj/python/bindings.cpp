#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>
#include <optional>
#include <sstream>

#include "galcurve/checks.hpp"
#include "galcurve/cli.hpp"
#include "galcurve/curve.hpp"
#include "galcurve/format.hpp"
#include "galcurve/involute.hpp"
#include "galcurve/numerics.hpp"
#include "galcurve/report_io.hpp"

namespace py = pybind11;
using namespace galcurve;

namespace {

PyObject* g_error_type = nullptr;

std::string vec_repr(const GVec3& v) {
  return "GVec3(" + format_double(v.x) + ", " + format_double(v.y) + ", " + format_double(v.z) +
         ")";
}

// Planar curve (plane_x, y(u), z(u)) from two expressions in one variable.
PlanarCurve planar_curve(const std::string& y, const std::string& z, double plane_x,
                         const ParamMap& params, const Interval& domain) {
  const Expr ey = Expr::parse(y);
  const Expr ez = Expr::parse(z);
  for (const Expr* e : {&ey, &ez}) {
    for (const std::string& name : e->free_params()) {
      if (!params.count(name)) raise(ErrorKind::UnboundParameter, "unbound parameter '" + name + "'");
    }
  }
  return PlanarCurve(
      plane_x,
      [ey, ez, params](const Jet3& u) {
        return CoordJets{eval_jet(ey, u, params), eval_jet(ez, u, params)};
      },
      domain);
}

std::string report_json(const CheckReport& r, int indent) {
  return report_to_json(r).dump(indent);
}

}  // namespace

PYBIND11_MODULE(_galcurve, m) {
  m.doc() = "Frenet apparatus, involutes and evolutes of curves in Galilean 3-space";

  g_error_type = PyErr_NewException("galcurve._galcurve.GalcurveError", PyExc_ValueError, nullptr);
  m.attr("GalcurveError") = py::handle(g_error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::reinterpret_borrow<py::object>(g_error_type)(e.what());
      inst.attr("kind") = to_string(e.kind());
      PyErr_SetObject(g_error_type, inst.ptr());
    }
  });

  py::class_<GVec3>(m, "GVec3")
      .def(py::init<>())
      .def(py::init<double, double, double>(), py::arg("x"), py::arg("y"), py::arg("z"))
      .def_readwrite("x", &GVec3::x)
      .def_readwrite("y", &GVec3::y)
      .def_readwrite("z", &GVec3::z)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self == py::self)
      .def("__iter__",
           [](const GVec3& v) { return py::iter(py::make_tuple(v.x, v.y, v.z)); })
      .def("__repr__", &vec_repr);

  py::enum_<VectorClass>(m, "VectorClass")
      .value("Isotropic", VectorClass::Isotropic)
      .value("NonIsotropic", VectorClass::NonIsotropic);

  m.def("g_dot", &g_dot, py::arg("u"), py::arg("v"));
  m.def("g_norm", &g_norm, py::arg("u"));
  m.def("g_cross", &g_cross, py::arg("u"), py::arg("v"));
  m.def("classify", &classify, py::arg("u"));

  py::class_<IsometryParams>(m, "IsometryParams")
      .def(py::init<>())
      .def_readwrite("a11", &IsometryParams::a11)
      .def_readwrite("a21", &IsometryParams::a21)
      .def_readwrite("a31", &IsometryParams::a31)
      .def_readwrite("a12", &IsometryParams::a12)
      .def_readwrite("a22", &IsometryParams::a22)
      .def_readwrite("a32", &IsometryParams::a32)
      .def_readwrite("a23", &IsometryParams::a23)
      .def_readwrite("phi", &IsometryParams::phi)
      .def("is_b6", &IsometryParams::is_b6);
  m.def("apply_point", &apply_point, py::arg("iso"), py::arg("p"));
  m.def("apply_vector", &apply_vector, py::arg("iso"), py::arg("v"));

  py::class_<Jet3>(m, "Jet3")
      .def(py::init<double, double, double, double>(), py::arg("v"), py::arg("d1") = 0.0,
           py::arg("d2") = 0.0, py::arg("d3") = 0.0)
      .def_readonly("v", &Jet3::v)
      .def_readonly("d1", &Jet3::d1)
      .def_readonly("d2", &Jet3::d2)
      .def_readonly("d3", &Jet3::d3)
      .def(py::self == py::self)
      .def("__iter__",
           [](const Jet3& j) { return py::iter(py::make_tuple(j.v, j.d1, j.d2, j.d3)); })
      .def("__repr__", [](const Jet3& j) {
        return "Jet3(" + format_double(j.v) + ", " + format_double(j.d1) + ", " +
               format_double(j.d2) + ", " + format_double(j.d3) + ")";
      });
  m.def("jet_var", &jet_var, py::arg("t0"));
  m.def("jet_const", &jet_const, py::arg("c"));

  py::class_<Expr>(m, "Expr")
      .def_static("parse", &Expr::parse, py::arg("text"))
      .def_property_readonly("free_params", &Expr::free_params)
      .def("is_variable", &Expr::is_variable)
      .def("eval", [](const Expr& e, double t, const ParamMap& p) { return eval(e, t, p); },
           py::arg("t"), py::arg("params") = ParamMap{})
      .def("eval_jet",
           [](const Expr& e, const Jet3& t, const ParamMap& p) { return eval_jet(e, t, p); },
           py::arg("t"), py::arg("params") = ParamMap{})
      .def(py::self == py::self)
      .def("__str__", &Expr::str)
      .def("__repr__", [](const Expr& e) { return "Expr('" + e.str() + "')"; });

  py::class_<Interval>(m, "Interval")
      .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
      .def(py::init([](const std::pair<double, double>& b) { return Interval{b.first, b.second}; }))
      .def_readwrite("lo", &Interval::lo)
      .def_readwrite("hi", &Interval::hi)
      .def("contains", &Interval::contains)
      .def("__repr__", [](const Interval& iv) {
        return "Interval(" + format_double(iv.lo) + ", " + format_double(iv.hi) + ")";
      });
  py::implicitly_convertible<py::tuple, Interval>();
  m.def("linspace", &linspace, py::arg("interval"), py::arg("n"));

  py::enum_<CurveKind>(m, "CurveKind")
      .value("Raw", CurveKind::Raw)
      .value("Admissible", CurveKind::Admissible);

  py::class_<CurveSpec>(m, "CurveSpec")
      .def_static(
          "parse",
          [](const std::string& text, const Interval& domain, const ParamMap& params,
             std::optional<CurveKind> kind) { return CurveSpec::parse(text, params, domain, kind); },
          py::arg("text"), py::arg("domain"), py::arg("params") = ParamMap{},
          py::arg("kind") = std::nullopt)
      .def_readonly("params", &CurveSpec::params)
      .def_readonly("domain", &CurveSpec::domain)
      .def_readonly("kind", &CurveSpec::kind)
      .def_property_readonly("coords", [](const CurveSpec& s) {
        return py::make_tuple(s.coords[0].str(), s.coords[1].str(), s.coords[2].str());
      });

  py::class_<CurveSample>(m, "CurveSample")
      .def_readonly("position", &CurveSample::position)
      .def_readonly("r1", &CurveSample::r1)
      .def_readonly("r2", &CurveSample::r2)
      .def_readonly("r3", &CurveSample::r3);

  py::class_<AdmissibleCurve>(m, "AdmissibleCurve")
      .def_property_readonly("domain", &AdmissibleCurve::domain)
      .def("point", &AdmissibleCurve::point, py::arg("s"))
      .def("eval3", [](const AdmissibleCurve& c, double s) { return eval3(c, s); }, py::arg("s"));

  py::class_<PlanarCurve>(m, "PlanarCurve")
      .def(py::init(&planar_curve), py::arg("y"), py::arg("z"), py::arg("plane_x"),
           py::arg("params") = ParamMap{},
           py::arg("domain") = Interval{-std::numeric_limits<double>::infinity(),
                                        std::numeric_limits<double>::infinity()})
      .def_property_readonly("plane_x", &PlanarCurve::plane_x)
      .def_property_readonly("domain", &PlanarCurve::domain)
      .def("point", &PlanarCurve::point, py::arg("s"))
      .def("eval3", [](const PlanarCurve& c, double s) { return eval3(c, s); }, py::arg("s"))
      .def("same_curve", &PlanarCurve::same_curve);

  m.def("reparametrize", &reparametrize, py::arg("spec"));
  m.def("to_admissible", &to_admissible, py::arg("spec"));
  m.def(
      "curve",
      [](const std::string& text, const Interval& domain, const ParamMap& params) {
        return to_admissible(CurveSpec::parse(text, params, domain));
      },
      py::arg("text"), py::arg("domain"), py::arg("params") = ParamMap{},
      "Admissible curve from \"x;y;z\"; raw curves are reparametrized by x.");

  py::class_<FrenetFrame>(m, "FrenetFrame")
      .def_readonly("T", &FrenetFrame::T)
      .def_readonly("N", &FrenetFrame::N)
      .def_readonly("B", &FrenetFrame::B)
      .def_readonly("kappa", &FrenetFrame::kappa)
      .def_readonly("tau", &FrenetFrame::tau);
  m.def("frenet", &frenet, py::arg("curve"), py::arg("s"));

  py::class_<PlanarFrenet>(m, "PlanarFrenet")
      .def_readonly("T_star", &PlanarFrenet::T_star)
      .def_readonly("speed", &PlanarFrenet::speed)
      .def_readonly("kappa_euclid", &PlanarFrenet::kappa_euclid);
  m.def("planar_frenet", &planar_frenet, py::arg("curve"), py::arg("s"));
  m.def("transform_curve", &transform_curve, py::arg("curve"), py::arg("iso"));

  m.attr("LAMBDA_MIN") = kLambdaMin;
  py::class_<InvolutePair>(m, "InvolutePair")
      .def_readonly("base", &InvolutePair::base)
      .def_readonly("c", &InvolutePair::c)
      .def_readonly("involute", &InvolutePair::involute)
      .def_readonly("check_domain", &InvolutePair::check_domain);
  m.def("make_involute", &make_involute, py::arg("base"), py::arg("c"));

  py::class_<InvoluteFrame>(m, "InvoluteFrame")
      .def_readonly("T_star", &InvoluteFrame::T_star)
      .def_readonly("N_star", &InvoluteFrame::N_star)
      .def_readonly("kappa_star", &InvoluteFrame::kappa_star)
      .def_readonly("dsstar_ds", &InvoluteFrame::dsstar_ds);
  m.def("involute_frame", &involute_frame, py::arg("pair"), py::arg("s"));
  m.def("involute_arc_length", &involute_arc_length, py::arg("pair"), py::arg("s0"),
        py::arg("s1"), py::arg("tol") = 1e-10);

  py::class_<EvoluteProblem>(m, "EvoluteProblem")
      .def(py::init([](const PlanarCurve& target, const std::string& u, const ParamMap& params,
                       double y0, double z0, double s_start, double s_end, double step) {
             return EvoluteProblem{target, Expr::parse(u), params, y0, z0, s_start, s_end, step};
           }),
           py::arg("target"), py::arg("u") = "s", py::arg("params") = ParamMap{}, py::arg("y0"),
           py::arg("z0"), py::arg("s_start"), py::arg("s_end"), py::arg("step") = 1e-3)
      .def_readonly("target", &EvoluteProblem::target)
      .def_readonly("correspondence", &EvoluteProblem::correspondence)
      .def_readonly("y0", &EvoluteProblem::y0)
      .def_readonly("z0", &EvoluteProblem::z0)
      .def_readonly("s_start", &EvoluteProblem::s_start)
      .def_readonly("s_end", &EvoluteProblem::s_end)
      .def_readonly("step", &EvoluteProblem::step);
  py::class_<Evolute>(m, "Evolute")
      .def_readonly("curve", &Evolute::curve)
      .def_readonly("problem", &Evolute::problem);
  m.def("make_evolute", &make_evolute, py::arg("problem"));

  py::class_<SampleRecord>(m, "SampleRecord")
      .def_readonly("s", &SampleRecord::s)
      .def_readonly("deviation", &SampleRecord::deviation)
      .def_property_readonly("fields", [](const SampleRecord& r) {
        py::dict d;
        for (const auto& [k, v] : r.fields) d[py::str(k)] = v;
        return d;
      });
  py::class_<CheckReport>(m, "CheckReport")
      .def_readonly("theorem_id", &CheckReport::theorem_id)
      .def_readonly("grid", &CheckReport::grid)
      .def_readonly("samples", &CheckReport::samples)
      .def_readonly("max_abs_deviation", &CheckReport::max_abs_deviation)
      .def_readonly("tolerance", &CheckReport::tolerance)
      .def_readonly("passed", &CheckReport::pass)
      .def_readonly("notes", &CheckReport::notes)
      .def("to_json", &report_json, py::arg("indent") = 2);

  m.def("check_thm31", &check_thm31, py::arg("pair"), py::arg("n"),
        py::arg("tol") = kDefaultTolThm31);
  m.def("check_thm32", &check_thm32, py::arg("pair"), py::arg("n"),
        py::arg("tol") = kDefaultTolThm32);
  m.def("check_thm33", &check_thm33, py::arg("pair"), py::arg("n"),
        py::arg("tol") = kDefaultTolThm33);
  m.def("check_thm34", &check_thm34, py::arg("beta"), py::arg("gamma"), py::arg("shared_target"),
        py::arg("n"), py::arg("tol") = kDefaultTolThm34);
  m.def("check_frenet_ode", &check_frenet_ode, py::arg("curve"), py::arg("n"),
        py::arg("tol") = kDefaultTolFrenetOde, py::arg("h") = kFrenetOdeStep);
  m.def("check_isometry", &check_isometry, py::arg("curve"), py::arg("n"),
        py::arg("count") = 100, py::arg("seed") = 20240601, py::arg("tol") = kDefaultTolIsometry);

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "galcurve");
        std::ostringstream out;
        std::ostringstream err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line; returns (exit_code, stdout, stderr).");
}
