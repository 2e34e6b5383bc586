#include "ivpp/varieties.hpp"

#include <algorithm>
#include <optional>

#include "json.hpp"

#include "ivpp/algebra/polyops.hpp"
#include "ivpp/algebra/roots.hpp"
#include "ivpp/embedded_data.hpp"
#include "ivpp/errors.hpp"
#include "ivpp/seeding.hpp"

namespace ivpp {

namespace {

using nlohmann::json;

const json& catalog() {
  static const json j = json::parse(data::varieties_json());
  return j;
}

const json* find_entry(const std::string& map_name, int period) {
  for (const auto& e : catalog().at("generators"))
    if (e.at("map") == map_name && e.at("period") == period) return &e;
  return nullptr;
}

std::string periods_text(const std::string& map_name) {
  std::string out;
  for (int n : gamma_periods(map_name)) out += (out.empty() ? "" : ", ") + std::to_string(n);
  return out.empty() ? "none" : out;
}

const json& entry_or_throw(const std::string& map_name, int period) {
  const json* e = find_entry(map_name, period);
  if (!e)
    throw UnknownVarietyError("no generator for map '" + map_name + "' at period " +
                              std::to_string(period) + "; available periods: " +
                              periods_text(map_name));
  return *e;
}

std::vector<MPoly> raw_gammas(const json& e) {
  std::vector<MPoly> out;
  if (e.contains("family")) {
    out.push_back(biquad_gamma(e.at("period").get<int>()));
  } else {
    for (const auto& s : e.at("gammas")) out.push_back(MPoly::parse(s.get<std::string>()));
  }
  return out;
}

// Clears the denominators of gamma(N_i / D_i) to the smallest power per
// distinct denominator.
MPoly compose_numerator(const MPoly& gamma, const Substitution& subs) {
  const auto& vars = gamma.vars();
  std::vector<MPoly> dens;
  std::vector<std::size_t> group(vars.size());
  std::vector<const RatFunc*> fs(vars.size());
  for (std::size_t k = 0; k < vars.size(); ++k) {
    auto it = subs.find(vars[k]);
    if (it == subs.end()) throw UnknownVarietyError("generator symbol '" + vars[k] + "' is unbound");
    fs[k] = &it->second;
    auto pos = std::find(dens.begin(), dens.end(), it->second.den());
    group[k] = static_cast<std::size_t>(pos - dens.begin());
    if (pos == dens.end()) dens.push_back(it->second.den());
  }
  std::vector<std::uint32_t> top(dens.size(), 0);
  for (const auto& [e, c] : gamma.terms()) {
    std::vector<std::uint32_t> s(dens.size(), 0);
    for (std::size_t k = 0; k < e.size(); ++k) s[group[k]] += e[k];
    for (std::size_t g = 0; g < dens.size(); ++g) top[g] = std::max(top[g], s[g]);
  }
  std::map<std::pair<std::size_t, std::uint32_t>, MPoly> num_pow, den_pow;
  auto npow = [&](std::size_t k, std::uint32_t e) -> const MPoly& {
    auto [it, fresh] = num_pow.try_emplace({k, e});
    if (fresh) it->second = fs[k]->num().pow(e);
    return it->second;
  };
  auto dpow = [&](std::size_t g, std::uint32_t e) -> const MPoly& {
    auto [it, fresh] = den_pow.try_emplace({g, e});
    if (fresh) it->second = dens[g].pow(e);
    return it->second;
  };
  MPoly acc;
  for (const auto& [e, c] : gamma.terms()) {
    MPoly t(c);
    std::vector<std::uint32_t> s(dens.size(), 0);
    for (std::size_t k = 0; k < e.size(); ++k) {
      s[group[k]] += e[k];
      if (e[k]) t = t * npow(k, e[k]);
    }
    for (std::size_t g = 0; g < dens.size(); ++g)
      if (top[g] > s[g]) t = t * dpow(g, top[g] - s[g]);
    acc = acc + t;
  }
  return acc.is_zero() ? acc : acc.primitive();
}

VarietyGenerator build(const json& e, const std::optional<IntegrableMap>& m) {
  VarietyGenerator g;
  g.map_name = e.at("map").get<std::string>();
  g.period = e.at("period").get<int>();
  g.gammas = raw_gammas(e);
  for (const auto& v : e.at("solve_for")) g.solve_for.push_back(v.get<std::string>());
  for (const auto& v : e.at("eliminate")) g.eliminate.push_back(v.get<std::string>());
  if (!m) return g;

  g.coords = m->coords();
  for (auto& gamma : g.gammas) gamma = gamma.substitute(m->params());
  Substitution invariants;
  for (std::size_t i = 0; i < m->invariants().size(); ++i)
    invariants.emplace(m->invariant_names()[i], m->invariants()[i]);
  for (const auto& c : m->coords()) invariants.emplace(c, RatFunc(MPoly::variable(c)));
  for (const auto& [sym, expr] : e.at("bind").items()) {
    const MPoly p = MPoly::parse(expr.get<std::string>()).substitute(m->params());
    g.substitution.emplace(sym, RatFunc(p).substitute(invariants));
  }
  return g;
}

}  // namespace

std::vector<MPoly> VarietyGenerator::composed_numerators() const {
  if (!bound()) throw UnknownVarietyError("generator is not bound to a map");
  std::vector<MPoly> out;
  for (const auto& gamma : gammas) out.push_back(compose_numerator(gamma, substitution));
  return out;
}

std::vector<Cx> VarietyGenerator::eval(const PointC& p) const {
  if (!bound()) throw UnknownVarietyError("generator is not bound to a map");
  if (p.size() != coords.size()) throw ArityError("point dimension differs from map dimension");
  Assignment at;
  for (std::size_t j = 0; j < coords.size(); ++j) at.emplace(coords[j], p[j]);
  Assignment h;
  for (const auto& [sym, f] : substitution) h.emplace(sym, f.eval(at));
  std::vector<Cx> out;
  for (const auto& gamma : gammas) out.push_back(gamma.eval(h));
  return out;
}

std::vector<int> gamma_periods(const std::string& map_name) {
  std::vector<int> out;
  if (map_name == "biquad") {
    for (const auto& [k, v] : catalog().at("families").at("biquad").at("gammas").items())
      out.push_back(std::stoi(k));
  } else {
    for (const auto& e : catalog().at("generators"))
      if (e.at("map") == map_name) out.push_back(e.at("period").get<int>());
  }
  std::sort(out.begin(), out.end());
  return out;
}

VarietyGenerator gamma_get(const std::string& map_name, int period) {
  const json& e = entry_or_throw(map_name, period);
  std::optional<IntegrableMap> m;
  if (catalog_parameters(map_name).empty()) m = catalog_get(map_name);
  return build(e, m);
}

VarietyGenerator gamma_get(const IntegrableMap& m, int period) {
  return build(entry_or_throw(m.name(), period), m);
}

const MPoly& biquad_gamma(int period) {
  static const std::map<int, MPoly> table = [] {
    std::map<int, MPoly> t;
    for (const auto& [k, v] : catalog().at("families").at("biquad").at("gammas").items())
      t.emplace(std::stoi(k), MPoly::parse(v.get<std::string>()));
    return t;
  }();
  auto it = table.find(period);
  if (it == table.end())
    throw UnknownVarietyError("no biquadratic generator at period " + std::to_string(period) +
                              "; available periods: " + periods_text("biquad"));
  return it->second;
}

Membership membership(const VarietyGenerator& g, const PointC& p, double tol) {
  if (!g.bound()) throw UnknownVarietyError("generator is not bound to a map");
  Assignment at;
  for (std::size_t j = 0; j < g.coords.size(); ++j) at.emplace(g.coords[j], p.at(j));
  Assignment h;
  for (const auto& [sym, f] : g.substitution) h.emplace(sym, f.eval(at, kPoleTol));
  Membership out;
  out.member = true;
  for (const auto& gamma : g.gammas) {
    const double r = gamma.eval(h).abs() / (1.0 + gamma.magnitude(h));
    out.residuals.push_back(r);
    if (!(r <= tol)) out.member = false;
  }
  return out;
}

namespace {

// Symbols of a monomial factor shared by every term of a generator with more
// than one term; they vanish on a spurious component (e.g. s = 0 for the
// period-5 Lotka-Volterra generator).
std::vector<std::string> monomial_factor_symbols(const MPoly& gamma) {
  std::vector<std::string> out;
  if (gamma.size() < 2) return out;
  for (std::size_t k = 0; k < gamma.vars().size(); ++k) {
    bool all = true;
    for (const auto& [e, c] : gamma.terms()) all = all && e[k] > 0;
    if (all) out.push_back(gamma.vars()[k]);
  }
  return out;
}

using UPoly = std::vector<std::complex<double>>;

UPoly umul(const UPoly& a, const UPoly& b) {
  UPoly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

void uadd(UPoly& acc, const UPoly& t, std::complex<double> c) {
  if (acc.size() < t.size()) acc.resize(t.size(), 0.0);
  for (std::size_t i = 0; i < t.size(); ++i) acc[i] += c * t[i];
}

UPoly upoly(const MPoly& p, const std::string& var, const Assignment& at) {
  UPoly out;
  for (const auto& c : univariate_coeffs(p, var, at)) out.push_back(c.value());
  if (out.empty()) out.push_back(0.0);
  return out;
}

// gamma(N_i / D_i) restricted to the line where only `var` is free, with the
// same denominator clearing as compose_numerator but in floating point.
UPoly compose_univariate(const MPoly& gamma, const Substitution& subs, const std::string& var,
                         const Assignment& at) {
  const auto& vars = gamma.vars();
  std::vector<MPoly> dens;
  std::vector<std::size_t> group(vars.size());
  std::vector<UPoly> nums(vars.size());
  for (std::size_t k = 0; k < vars.size(); ++k) {
    const RatFunc& f = subs.find(vars[k])->second;
    auto pos = std::find(dens.begin(), dens.end(), f.den());
    group[k] = static_cast<std::size_t>(pos - dens.begin());
    if (pos == dens.end()) dens.push_back(f.den());
    nums[k] = upoly(f.num(), var, at);
  }
  std::vector<UPoly> dpoly;
  for (const auto& d : dens) dpoly.push_back(upoly(d, var, at));
  std::vector<std::uint32_t> top(dens.size(), 0);
  for (const auto& [e, c] : gamma.terms()) {
    std::vector<std::uint32_t> s(dens.size(), 0);
    for (std::size_t k = 0; k < e.size(); ++k) s[group[k]] += e[k];
    for (std::size_t g = 0; g < dens.size(); ++g) top[g] = std::max(top[g], s[g]);
  }
  std::map<std::pair<std::size_t, std::uint32_t>, UPoly> npow, dpow;
  auto power = [](auto& cache, const UPoly& base, std::size_t k, std::uint32_t e) -> const UPoly& {
    auto [it, fresh] = cache.try_emplace({k, e});
    if (fresh) {
      UPoly acc{1.0};
      for (std::uint32_t j = 0; j < e; ++j) acc = umul(acc, base);
      it->second = std::move(acc);
    }
    return it->second;
  };
  UPoly acc{0.0};
  for (const auto& [e, c] : gamma.terms()) {
    UPoly t{1.0};
    std::vector<std::uint32_t> s(dens.size(), 0);
    for (std::size_t k = 0; k < e.size(); ++k) {
      s[group[k]] += e[k];
      if (e[k]) t = umul(t, power(npow, nums[k], k, e[k]));
    }
    for (std::size_t g = 0; g < dens.size(); ++g)
      if (top[g] > s[g]) t = umul(t, power(dpow, dpoly[g], g, top[g] - s[g]));
    uadd(acc, t, c.to_double());
  }
  return acc;
}

}  // namespace

PointC sample_on_variety(const VarietyGenerator& g, std::uint64_t seed) {
  if (!g.bound()) throw UnknownVarietyError("generator is not bound to a map");
  const std::size_t l = g.gammas.size();
  if (l == 0 || l > 2 || g.solve_for.size() != l)
    throw SamplingError("sampler supports one or two generators with matching solve_for");

  // Symbolic stage: all but the last solved coordinate come from generators
  // linear in that coordinate.
  std::vector<RatFunc> linear(l - 1);
  Substitution solved;
  for (std::size_t a = 0; a + 1 < l; ++a) {
    const RatFunc n = RatFunc(compose_numerator(g.gammas[a], g.substitution)).substitute(solved);
    const auto c = n.num().coeffs(g.solve_for[a]);
    if (c.size() != 2) throw SamplingError("generator is not linear in " + g.solve_for[a]);
    linear[a] = RatFunc(-c[0], c[1]);
    solved.emplace(g.solve_for[a], linear[a]);
  }
  Substitution last_subs;
  for (const auto& [sym, f] : g.substitution) last_subs.emplace(sym, f.substitute(solved));
  const MPoly& last = g.gammas[l - 1];
  const std::string& var = g.solve_for[l - 1];

  std::vector<std::string> guarded;
  for (const auto& gamma : g.gammas)
    for (auto& s : monomial_factor_symbols(gamma)) guarded.push_back(s);

  SplitMix64 rng(seed);
  for (int attempt = 0; attempt < 32; ++attempt) {
    Assignment at;
    for (const auto& c : g.coords)
      if (std::find(g.solve_for.begin(), g.solve_for.end(), c) == g.solve_for.end())
        at.emplace(c, draw_grid(rng).value());

    std::vector<Cx> rts;
    try {
      UPoly u = compose_univariate(last, last_subs, var, at);
      std::vector<Cx> coeffs(u.begin(), u.end());
      rts = roots(coeffs, 0.0);
    } catch (const Error&) {
      continue;  // degenerate draw
    }
    for (const Cx& root : rts) {
      if (root.abs() < 1e-3) continue;
      try {
        Assignment full = at;
        full.insert_or_assign(var, root);
        bool ok = true;
        for (std::size_t a = l - 1; a-- > 0;) {
          const Cx v = linear[a].eval(full, kPoleTol);
          if (v.abs() < 1e-3) ok = false;
          full.insert_or_assign(g.solve_for[a], v);
        }
        if (!ok) continue;
        PointC p;
        for (const auto& c : g.coords) p.push_back(full.at(c));
        Assignment h;
        for (const auto& [sym, f] : g.substitution) h.emplace(sym, f.eval(full, kPoleTol));
        const bool spurious = std::any_of(guarded.begin(), guarded.end(), [&](const auto& s) {
          return h.at(s).abs() <= 1e-6;
        });
        if (spurious) continue;
        if (membership(g, p, 1e-9).member) return p;
      } catch (const Error&) {
        continue;
      }
    }
  }
  throw SamplingError("no admissible point on the period-" + std::to_string(g.period) +
                      " variety of " + g.map_name + " after 32 draws");
}

std::vector<ChecksumResult> verify_transcription_checksums() {
  std::vector<ChecksumResult> out;
  for (const auto& c : catalog().at("checksums")) {
    ChecksumResult r;
    MPoly p;
    if (c.contains("family")) {
      r.label = c.at("family").get<std::string>();
      p = biquad_gamma(c.at("period").get<int>());
    } else {
      r.label = c.at("map").get<std::string>();
      p = raw_gammas(entry_or_throw(r.label, c.at("period").get<int>())).at(0);
    }
    r.label += " period " + std::to_string(c.at("period").get<int>());
    const auto& syms = c.at("symbols");
    const auto& values = c.at("values");
    for (std::size_t i = 0; i < c.at("points").size(); ++i) {
      ExactAssignment at;
      const auto& pt = c.at("points")[i];
      for (std::size_t k = 0; k < syms.size(); ++k)
        at.emplace(syms[k].get<std::string>(), BigRational::parse(pt[k].get<std::string>()));
      ++r.points;
      if (p.eval_exact(at) != BigRational::parse(values[i].get<std::string>())) ++r.mismatches;
    }
    out.push_back(r);
  }
  return out;
}

std::string varieties_catalog_json() {
  json out = json::object();
  for (const auto& e : catalog().at("generators")) {
    json list = json::array();
    for (const auto& g : raw_gammas(e)) list.push_back(g.str());
    out[e.at("map").get<std::string>()][std::to_string(e.at("period").get<int>())] = list;
  }
  for (const auto& [k, v] : catalog().at("families").at("biquad").at("gammas").items())
    out["biquad"][k] = json::array({biquad_gamma(std::stoi(k)).str()});
  return out.dump(2);
}

}  // namespace ivpp
