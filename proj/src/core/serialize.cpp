#include "ivpp/serialize.hpp"

#include <sstream>

#include "ivpp/errors.hpp"

namespace ivpp {

Json to_json(const Cx& z) { return Json::array({z.re(), z.im()}); }

Json to_json(const PointC& p) {
  Json out = Json::array();
  for (const auto& z : p) out.push_back(to_json(z));
  return out;
}

Json to_json(const RatFunc& f) { return Json{{"num", f.num().str()}, {"den", f.den().str()}}; }

Json to_json(const IntegrableMap& m) {
  Json params = Json::object();
  for (const auto& [k, v] : m.params()) params[k] = v.str();
  Json comps = Json::array();
  for (const auto& c : m.components()) comps.push_back(to_json(c));
  Json invs = Json::array();
  for (std::size_t i = 0; i < m.invariants().size(); ++i) {
    Json e = to_json(m.invariants()[i]);
    e["name"] = m.invariant_names()[i];
    invs.push_back(std::move(e));
  }
  return Json{{"name", m.name()},    {"d", m.dim()},           {"coords", m.coords()},
              {"params", params},    {"components", comps},    {"invariants", invs},
              {"periods", gamma_periods(m.name())}};
}

IntegrableMap map_from_json(const Json& j) {
  ParamBindings params;
  if (j.contains("params"))
    for (const auto& [k, v] : j.at("params").items())
      params.emplace(k, BigRational::parse(v.get<std::string>()));
  return catalog_get(j.at("name").get<std::string>(), params);
}

Json to_json(const VarietyGenerator& g) {
  Json gammas = Json::array();
  for (const auto& p : g.gammas) gammas.push_back(p.str());
  Json subs = Json::object();
  for (const auto& [k, v] : g.substitution) subs[k] = to_json(v);
  return Json{{"map", g.map_name},       {"period", g.period},     {"gammas", gammas},
              {"substitution", subs},    {"solve_for", g.solve_for}, {"eliminate", g.eliminate}};
}

Json to_json(const OrbitReport& r, bool with_points) {
  Json out{{"return_error", r.return_error},
           {"drift", r.drift},
           {"primitive", r.primitive},
           {"fixed_point", r.fixed_point}};
  if (with_points) {
    Json pts = Json::array();
    for (const auto& p : r.points) pts.push_back(to_json(p));
    out["points"] = std::move(pts);
  }
  return out;
}

Json to_json(const RecurrenceRelation& r) {
  return Json{{"F", r.F.str()}, {"vars", r.F.vars()}, {"period", r.period}, {"source", r.source}};
}

Json to_json(const FixtureVerdict& v) {
  Json out{{"label", v.label},   {"ok", v.ok()},         {"samples", v.samples},
           {"passed", v.passed}, {"skipped", v.skipped}, {"max_residual", v.max_residual}};
  out["derived"] = v.derived ? Json(*v.derived) : Json(nullptr);
  out["exact"] = v.exact ? Json(*v.exact) : Json(nullptr);
  out["note"] = v.note;
  return out;
}

Json biquad_to_json(const BiquadParams& q) {
  Json out = Json::array();
  for (const auto& c : q) out.push_back(c.str());
  return out;
}

BiquadParams biquad_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 6) throw ParseError("biquadratic parameters need 6 entries");
  BiquadParams q;
  for (std::size_t i = 0; i < 6; ++i) {
    const auto& e = j.at(i);
    q[i] = e.is_string() ? BigRational::parse(e.get<std::string>()) : BigRational(e.get<long>());
  }
  return q;
}

std::string orbit_csv(const std::vector<PointC>& points, const std::vector<std::string>& coords) {
  std::ostringstream os;
  os.precision(17);
  os << "step";
  for (const auto& c : coords) os << ',' << c << "_re," << c << "_im";
  os << '\n';
  for (std::size_t k = 0; k < points.size(); ++k) {
    os << k;
    for (const auto& z : points[k]) os << ',' << z.re() << ',' << z.im();
    os << '\n';
  }
  return os.str();
}

}  // namespace ivpp
