#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "ivpp/catalog.hpp"
#include "ivpp/elim.hpp"
#include "ivpp/errors.hpp"
#include "ivpp/moebius.hpp"
#include "ivpp/orbit.hpp"
#include "ivpp/varieties.hpp"

namespace py = pybind11;
using namespace ivpp;

namespace {

using Params = std::map<std::string, std::string>;
using PyPoint = std::vector<std::complex<double>>;

IntegrableMap get_map(const std::string& name, const Params& params) {
  ParamBindings b;
  for (const auto& [k, v] : params) b[k] = BigRational::parse(v);
  return catalog_get(name, b);
}

PointC to_point(const PyPoint& p) { return PointC(p.begin(), p.end()); }

PyPoint from_point(const PointC& p) {
  PyPoint out;
  for (const auto& z : p) out.push_back(z.value());
  return out;
}

std::vector<std::string> strs(const std::vector<MPoly>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.str());
  return out;
}

}  // namespace

PYBIND11_MODULE(_ivpp, m) {
  m.doc() = "Integrable maps, periodicity varieties and recurrence elimination";

  // Later registrations are tried first, so PoleError wins over Error.
  const auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<PoleError>(m, "PoleError", base.ptr());

  m.def("list_maps", [] { return catalog_names(); }, "Names of the catalog maps");

  m.def(
      "map_info",
      [](const std::string& name, const Params& params) {
        const auto mp = get_map(name, params);
        py::dict d;
        d["name"] = mp.name();
        d["coords"] = mp.coords();
        std::vector<std::string> comps;
        for (const auto& c : mp.components()) comps.push_back("(" + c.num().str() + ")/(" + c.den().str() + ")");
        d["components"] = comps;
        d["invariants"] = mp.invariant_names();
        d["parameters"] = catalog_parameters(name);
        d["periods"] = gamma_periods(name);
        return d;
      },
      py::arg("name"), py::arg("params") = Params{});

  m.def(
      "iterate",
      [](const std::string& name, const PyPoint& p0, int steps, const Params& params) {
        std::vector<PyPoint> out;
        for (const auto& p : iterate(get_map(name, params), to_point(p0), steps)) out.push_back(from_point(p));
        return out;
      },
      py::arg("name"), py::arg("p0"), py::arg("steps"), py::arg("params") = Params{});

  m.def(
      "verify_period",
      [](const std::string& name, const PyPoint& p0, int n, double tol, const Params& params) {
        const auto r = verify_period(get_map(name, params), to_point(p0), n, tol);
        py::dict d;
        d["return_error"] = r.return_error;
        d["drift"] = r.drift;
        d["primitive"] = r.primitive;
        d["fixed_point"] = r.fixed_point;
        d["passed"] = r.passed(tol);
        return d;
      },
      py::arg("name"), py::arg("p0"), py::arg("n"), py::arg("tol") = 1e-9, py::arg("params") = Params{});

  m.def(
      "variety",
      [](const std::string& name, int n) { return strs(gamma_get(name, n).gammas); },
      py::arg("name"), py::arg("n"), "Printed generators gamma^(n) in the invariants");

  m.def(
      "sample_on_variety",
      [](const std::string& name, int n, std::uint64_t seed, const Params& params) {
        return from_point(sample_on_variety(gamma_get(get_map(name, params), n), seed));
      },
      py::arg("name"), py::arg("n"), py::arg("seed") = 1, py::arg("params") = Params{});

  m.def(
      "eliminate",
      [](const std::string& name, int n, const std::string& target, const Params& params) {
        return strs(eliminate(recurrence_problem(get_map(name, params), n, target)));
      },
      py::arg("name"), py::arg("n"), py::arg("target") = "x", py::arg("params") = Params{},
      "Recurrence factors F(target, image) for period n");

  m.def("derive_gamma", [](int n) { return derive_gamma(n).str(); }, py::arg("n"));

  m.def(
      "recurrence_F",
      [](int n, const std::string& a, const std::string& b) {
        if (a.empty() && b.empty()) return recurrence_F(n).F.str();
        return recurrence_F(n, BigRational::parse(a), BigRational::parse(b)).F.str();
      },
      py::arg("n"), py::arg("a") = "", py::arg("b") = "");
}
