#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "widthcalc/cli.hpp"
#include "widthcalc/closedform.hpp"
#include "widthcalc/exponent.hpp"
#include "widthcalc/finitedim.hpp"
#include "widthcalc/oracle.hpp"

namespace py = pybind11;
using namespace widthcalc;

namespace {

ProblemSpec make_spec(const std::vector<std::string>& p, const std::vector<std::string>& r, const std::string& q) {
  std::vector<Rational> pv, rv;
  for (const auto& s : p) pv.push_back(Rational::parse(s));
  for (const auto& s : r) rv.push_back(Rational::parse(s));
  return ProblemSpec(pv, rv, Rational::parse(q));
}

std::vector<std::string> strs(const std::vector<Rational>& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

// Rationals cross the boundary as "a/b" strings; the Python layer turns them into Fractions.
py::dict exponent(const std::vector<std::string>& p, const std::vector<std::string>& r, const std::string& q) {
  const ProblemSpec spec = make_spec(p, r, q);
  const ExponentResult res = minimize(spec);
  py::dict out;
  out["theta"] = res.theta.str();
  out["alpha"] = strs(res.argmin.alpha);
  out["s"] = res.argmin.s.str();
  out["unique"] = res.unique;
  std::vector<std::string> active;
  for (const auto& t : res.active_pieces) active.push_back(t.str());
  out["active_pieces"] = active;
  out["compactness"] = compactness_name(res.compact);
  return out;
}

py::dict regime(const std::vector<std::string>& p, const std::vector<std::string>& r, const std::string& q) {
  const RegimeReport rep = classify_regime(make_spec(p, r, q));
  py::dict out;
  out["theorem_case"] = rep.theorem_case;
  out["bounded"] = rep.bounded;
  out["compact"] = rep.compact;
  out["dop_usl_holds"] = rep.dop_usl_holds;
  py::dict th;
  for (const auto& [k, v] : rep.thetas) th[py::str(k)] = v.str();
  out["thetas"] = th;
  out["exponent"] = rep.exponent ? py::object(py::str(rep.exponent->str())) : py::object(py::none());
  out["tie"] = rep.tie;
  out["note"] = rep.note;
  return out;
}

py::dict finite_order(std::uint64_t N, std::uint64_t n, const std::string& q,
                const std::vector<std::pair<std::string, std::string>>& balls) {
  IntersectionSpec spec;
  spec.N = N;
  spec.n = n;
  spec.q = Rational::parse(q);
  for (const auto& [p, nu] : balls) spec.balls.push_back({LebesgueExponent::parse(p), cli::parse_power_product(nu)});
  const WidthOrder w = intersection_order(spec);
  py::dict out;
  out["value"] = w.value.str();
  const auto r = w.value.as_rational();
  out["rational"] = r ? py::object(py::str(r->str())) : py::object(py::none());
  out["branch"] = w.branch;
  return out;
}

std::tuple<int, std::string, std::string> run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  py::gil_scoped_release release;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

PYBIND11_MODULE(_widthcalc, m) {
  m.doc() = "Exact width exponents for anisotropic Sobolev classes";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<RangeError>(m, "RangeError", PyExc_ValueError);

  m.def("exponent", &exponent, py::arg("p"), py::arg("r"), py::arg("q"));
  m.def("regime", &regime, py::arg("p"), py::arg("r"), py::arg("q"));
  m.def("finite", &finite_order, py::arg("N"), py::arg("n"), py::arg("q"), py::arg("balls"));
  m.def("run_cli", &run_cli, py::arg("args"));
}
