#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cantorgeo/analysis.hpp"
#include "cantorgeo/cantor.hpp"
#include "cantorgeo/cli.hpp"
#include "cantorgeo/config.hpp"
#include "cantorgeo/errors.hpp"
#include "cantorgeo/geometry.hpp"
#include "cantorgeo/logreal.hpp"
#include "cantorgeo/report.hpp"

namespace py = pybind11;
using namespace cantorgeo;

namespace {

py::object to_py(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

QValue qv(const py::object& o) {
  if (py::isinstance<py::str>(o)) return QValue::parse(o.cast<std::string>());
  if (py::isinstance<LogScalar>(o)) return QValue::from_log(o.cast<LogScalar>());
  if (py::isinstance<py::int_>(o)) return QValue::parse(py::str(o).cast<std::string>());
  return QValue::from_log(LogScalar::from_linear(o.cast<double>()));
}

LevelMode parse_mode(const std::string& s) {
  if (s == "exact") return LevelMode::ExactRational;
  if (s == "log") return LevelMode::LogDomain;
  throw DomainError("mode must be 'exact' or 'log'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "cantorgeo native core";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<SaturationError>(m, "SaturationError", base.ptr());
  py::register_exception<UnsupportedOperation>(m, "UnsupportedOperation", base.ptr());
  py::register_exception<OutOfRange>(m, "OutOfRange", base.ptr());
  py::register_exception<SpecViolation>(m, "SpecViolation", base.ptr());
  py::register_exception<ModeUnavailable>(m, "ModeUnavailable", base.ptr());
  py::register_exception<NoPentagon>(m, "NoPentagon", base.ptr());
  py::register_exception<UnsupportedKind>(m, "UnsupportedKind", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  py::class_<LogScalar>(m, "LogScalar")
      .def(py::init([](double v) { return LogScalar::from_linear(v); }), py::arg("value") = 0.0)
      .def_static("parse", [](const std::string& s) { return QValue::parse(s).value; })
      .def_property_readonly("sign", &LogScalar::sign)
      .def_property_readonly("layer", &LogScalar::layer)
      .def_property_readonly("exponent_sign", &LogScalar::exponent_sign)
      .def_property_readonly("mantissa", [](const LogScalar& x) { return static_cast<double>(x.mantissa()); })
      .def("approx", &LogScalar::approx, py::arg("digits") = 8)
      .def("to_json", [](const LogScalar& x) { return to_py(to_json(x)); })
      .def("__float__", &LogScalar::to_double)
      .def("__repr__", [](const LogScalar& x) { return "LogScalar(" + x.approx(12) + ")"; })
      .def("ln", [](const LogScalar& x) { return ln_of(x); })
      .def("exp", [](const LogScalar& x) { return exp_of(x); })
      .def("__mul__", [](const LogScalar& a, const LogScalar& b) { return mul(a, b); })
      .def("__truediv__", [](const LogScalar& a, const LogScalar& b) { return div(a, b); })
      .def("__add__", [](const LogScalar& a, const LogScalar& b) { return add(a, b); })
      .def("__neg__", [](const LogScalar& a) { return neg(a); })
      .def("__lt__", [](const LogScalar& a, const LogScalar& b) { return cmp(a, b) == Ordering::LT; })
      .def("__le__", [](const LogScalar& a, const LogScalar& b) { return cmp(a, b) != Ordering::GT; })
      .def("__gt__", [](const LogScalar& a, const LogScalar& b) { return cmp(a, b) == Ordering::GT; })
      .def("__ge__", [](const LogScalar& a, const LogScalar& b) { return cmp(a, b) != Ordering::LT; })
      .def("__eq__", [](const LogScalar& a, const LogScalar& b) { return cmp(a, b) == Ordering::EQ; })
      .def("__hash__", [](const LogScalar& x) { return py::hash(py::str(x.approx(20))); });
  py::implicitly_convertible<double, LogScalar>();
  py::implicitly_convertible<int, LogScalar>();

  py::class_<OmegaSpec>(m, "OmegaSpec")
      .def_static("constant", [](const py::object& q) { return OmegaSpec::constant(qv(q)); })
      .def_static(
          "explicit",
          [](const py::list& values, bool periodic) {
            std::vector<QValue> v;
            for (const auto& o : values) v.push_back(qv(py::reinterpret_borrow<py::object>(o)));
            return OmegaSpec::explicit_list(std::move(v), periodic);
          },
          py::arg("values"), py::arg("periodic") = false)
      .def_static("recursive_i", [](const py::object& q1) { return OmegaSpec::recursive_i(qv(q1)); })
      .def_static(
          "composite_ii",
          [](const py::object& d, std::optional<std::vector<double>> p_values,
             std::optional<std::vector<double>> a_values) {
            CompositeRule r;
            r.d = qv(d);
            if (p_values) {
              r.p_rule = PRule::Explicit;
              r.p_values.assign(p_values->begin(), p_values->end());
            }
            if (a_values) {
              r.a_rule = ARule::Explicit;
              r.a_values.assign(a_values->begin(), a_values->end());
            }
            return OmegaSpec::composite_ii(std::move(r));
          },
          py::arg("d"), py::arg("p_values") = py::none(), py::arg("a_values") = py::none())
      .def_property_readonly("kind", [](const OmegaSpec& s) { return std::string(to_string(s.kind())); })
      .def_property_readonly("horizon_hint", &OmegaSpec::horizon_hint)
      .def("q", &OmegaSpec::q)
      .def("q_exact", [](const OmegaSpec& s, std::uint64_t n) -> py::object {
        auto r = s.q_exact(n);
        if (!r) return py::none();
        return py::module_::import("fractions").attr("Fraction")(format_rational(*r));
      })
      .def("a", [](const OmegaSpec& s, std::uint64_t k) { return static_cast<double>(s.a(k)); })
      .def("p", [](const OmegaSpec& s, std::uint64_t n) { return static_cast<double>(s.p(n)); })
      .def("p_term", [](const OmegaSpec& s, std::uint64_t n) { return static_cast<double>(s.p_term(n)); });

  m.def("parse_spec_text", &parse_spec_text);
  m.def("parse_spec", &parse_spec);
  m.def("q_at", &q_at);
  m.def("two_adic", [](int k, std::uint64_t i) {
    const DyadicIndex d = two_adic(k, i);
    py::dict out;
    out["k"] = d.k;
    out["i"] = d.i;
    out["form"] = to_string(d.form);
    out["ell"] = d.ell;
    out["m"] = d.m;
    return out;
  });
  m.def("closed_interval_length", &closed_interval_length);
  m.def("closed_interval_length_exact", [](const OmegaSpec& s, int k) {
    return py::module_::import("fractions").attr("Fraction")(format_rational(closed_interval_length_exact(s, k)));
  });
  m.def("gap_length", &gap_length);
  m.def("gap_length_exact", [](const OmegaSpec& s, int k, std::uint64_t j) {
    return py::module_::import("fractions").attr("Fraction")(format_rational(gap_length_exact(s, k, j)));
  });
  m.def("gap_ratio", [](const OmegaSpec& s, int k, std::uint64_t i) {
    const GapRatio g = gap_ratio(s, k, i);
    return py::make_tuple(g.ratio, g.ineq2);
  });
  m.def(
      "level",
      [](const OmegaSpec& s, int k, const std::string& mode) {
        return to_py(level_report(s, level(s, k, parse_mode(mode))).json);
      },
      py::arg("spec"), py::arg("k"), py::arg("mode") = "log");

  m.def("U", &U);
  m.def("L", &L);
  m.def("collar_eta", &collar_eta);
  m.def("annulus_core_length", &annulus_core_length);
  m.def("pentagon_d", &pentagon_d);
  m.def("pentagon_b", &pentagon_b);
  m.def("upper_bound_geodesic", [](const OmegaSpec& s, int k, std::uint64_t i) {
    const UpperBound u = upper_bound_geodesic(s, k, i);
    return py::make_tuple(u.value, std::string(to_string(u.branch)), u.certified);
  });
  m.def("lower_bound_geodesic", &lower_bound_geodesic);

  m.def("omega_delta_i", [](const OmegaSpec& s, double delta, std::uint64_t i, std::uint64_t horizon) {
    const CountVerdict v = omega_delta_i(s, delta, i, horizon);
    return py::make_tuple(std::string(to_string(v.status)), v.value);
  });
  m.def("N_estimate", [](const OmegaSpec& s, double delta, std::uint64_t horizon) {
    const CountVerdict v = N_estimate(s, delta, horizon);
    return py::make_tuple(std::string(to_string(v.status)), v.value);
  });
  m.def(
      "classify_qc",
      [](const OmegaSpec& s, std::uint64_t horizon, std::optional<std::vector<double>> grid) {
        std::vector<long double> g;
        if (grid) g.assign(grid->begin(), grid->end());
        if (g.empty()) g = default_delta_grid();
        return to_py(classify_report(classify_qc(s, horizon, g)).json);
      },
      py::arg("spec"), py::arg("horizon"), py::arg("delta_grid") = py::none());
  m.def(
      "check_condition_I",
      [](const OmegaSpec& s, std::uint64_t horizon) {
        return to_py(condition_I_report(check_condition_I(s, horizon)).json["verdict"]);
      },
      py::arg("spec"), py::arg("horizon"));
  m.def(
      "check_condition_II",
      [](const OmegaSpec& s, std::uint64_t blocks) {
        return to_py(condition_II_report(check_condition_II(s, blocks)).json);
      },
      py::arg("spec"), py::arg("blocks"));
  m.def("block_sum_eta", [](const OmegaSpec& s, std::uint64_t k) {
    const EtaBlock e = block_sum_eta(s, k);
    return py::make_tuple(static_cast<double>(e.S), static_cast<double>(e.T), static_cast<double>(e.ratio));
  });
  m.def("witness_ratio", [](const OmegaSpec& s, std::uint64_t n) {
    const WitnessRatio w = witness_ratio(s, n);
    return py::make_tuple(w.ratio, w.comparator);
  });
  m.def("pants_ratio_bound", &pants_ratio_bound);
  m.def("theorem_criterion_report", [](const OmegaSpec& s, std::uint64_t horizon) {
    return to_py(criterion_report(theorem_criterion_report(s, horizon)).json);
  });

  m.def(
      "run",
      [](const std::string& verb, const std::string& spec_path, const py::kwargs& kw) {
        Command c;
        c.verb = verb;
        c.spec_path = spec_path;
        std::string fmt = "json";
        for (const auto& item : kw) {
          const std::string key = py::str(item.first);
          const py::handle v = item.second;
          if (key == "depth") c.depth = v.cast<int>();
          else if (key == "horizon") c.horizon = v.cast<std::uint64_t>();
          else if (key == "blocks") c.blocks = v.cast<std::uint64_t>();
          else if (key == "index") c.index = v.cast<std::uint64_t>();
          else if (key == "from_") c.from = v.cast<std::uint64_t>();
          else if (key == "mode") c.mode = v.cast<std::string>();
          else if (key == "a") c.a = py::str(v);
          else if (key == "b") c.b = py::str(v);
          else if (key == "d") c.d = py::str(v);
          else if (key == "format") fmt = v.cast<std::string>();
          else if (key == "precision") c.precision = v.cast<int>();
          else throw DomainError("unknown option '" + key + "'");
        }
        c.format = parse_format(fmt);
        std::ostringstream out, err;
        const int code = run(c, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("verb"), py::arg("spec_path") = "");
}
