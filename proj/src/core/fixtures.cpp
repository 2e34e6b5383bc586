#include "ivpp/fixtures.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "ivpp/algebra/polyops.hpp"
#include "ivpp/algebra/roots.hpp"
#include "ivpp/elim.hpp"
#include "ivpp/embedded_data.hpp"
#include "ivpp/errors.hpp"
#include "ivpp/orbit.hpp"
#include "ivpp/seeding.hpp"
#include "ivpp/varieties.hpp"
#include "json.hpp"

namespace ivpp {

namespace {

using nlohmann::json;
using Defs = std::map<std::string, RatFunc, std::less<>>;

ParamBindings read_bindings(const json& e, const char* key) {
  ParamBindings out;
  if (e.contains(key))
    for (const auto& [k, v] : e.at(key).items()) out.emplace(k, BigRational::parse(v.get<std::string>()));
  return out;
}

struct Symbols {
  std::map<std::string, MPoly, std::less<>> poly;
  Defs rat;
};

Symbols read_symbols(const json& e) {
  Symbols s;
  const ParamBindings b = e.contains("symbols") ? read_bindings(e, "symbols") : read_bindings(e, "params");
  for (const auto& [k, v] : b) {
    s.poly.emplace(k, MPoly(v));
    s.rat.emplace(k, RatFunc(MPoly(v)));
  }
  return s;
}

std::vector<AuxSymbol> read_aux(const json& e, const Symbols& s) {
  std::vector<AuxSymbol> out;
  if (!e.contains("aux")) return out;
  for (const auto& a : e.at("aux"))
    out.push_back({a.at(0).get<std::string>(), MPoly::parse(a.at(1).get<std::string>()).substitute(s.poly)});
  return out;
}

RatFunc read_ratfunc(const json& pair, const Defs& defs, const Symbols& s) {
  RatFunc f = RatFunc::parse(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
  if (!defs.empty()) f = f.substitute(defs);
  return f.substitute(s.rat);
}

struct Loaded {
  std::vector<RecurrenceFixture> recurrences;
  std::vector<RouteFixture> routes;
};

const Loaded& loaded() {
  static const Loaded data = [] {
    Loaded out;
    const json j = json::parse(data::fixtures_json());
    for (const auto& e : j.at("recurrences")) {
      const Symbols s = read_symbols(e);
      RecurrenceFixture f;
      f.label = e.at("label");
      f.map_name = e.at("map");
      f.params = read_bindings(e, "params");
      f.period = e.at("period");
      f.target = e.at("target");
      f.printed = MPoly::parse(e.at("F").get<std::string>());
      f.F = f.printed.substitute(s.poly);
      f.aux = read_aux(e, s);
      f.derive = e.value("derive", false);
      out.recurrences.push_back(std::move(f));
    }
    for (const auto& e : j.at("routes")) {
      const Symbols s = read_symbols(e);
      Defs defs;
      if (e.contains("defs"))
        for (const auto& [k, v] : e.at("defs").items())
          defs.emplace(k, RatFunc::parse(v.at(0).get<std::string>(), v.at(1).get<std::string>()));
      RouteFixture f;
      f.label = e.at("label");
      f.map_name = e.at("map");
      f.params = read_bindings(e, "params");
      f.period = e.at("period");
      f.coords = e.at("coords").get<std::vector<std::string>>();
      f.aux = read_aux(e, s);
      for (const auto& route : e.at("routes")) {
        std::vector<RouteFixture::State> steps;
        for (const auto& state : route) {
          RouteFixture::State st;
          for (const auto& comp : state) st.push_back(read_ratfunc(comp, defs, s));
          steps.push_back(std::move(st));
        }
        f.routes.push_back(std::move(steps));
      }
      f.reversed = e.value("reversed", false);
      f.exact = e.value("exact", false);
      f.erratum_of = e.value("erratum_of", "");
      f.erratum = e.value("erratum", "");
      out.routes.push_back(std::move(f));
    }
    return out;
  }();
  return data;
}

// Drops vanishing leading coefficients; empty when nothing of positive
// degree remains.
std::vector<Cx> trimmed(std::vector<Cx> c) {
  double scale = 0.0;
  for (const auto& z : c) scale = std::max(scale, z.abs());
  while (!c.empty() && c.back().abs() <= 1e-12 * (1.0 + scale)) c.pop_back();
  if (c.size() < 2) c.clear();
  return c;
}

std::vector<Cx> solve_in(const MPoly& p, const std::string& var, const Assignment& at) {
  const auto c = trimmed(univariate_coeffs(p, var, at));
  if (c.empty()) throw DegreeError("no root in " + var);
  return roots(c);
}

// Every assignment of the auxiliaries extending `base`.
std::vector<Assignment> branches(const std::vector<AuxSymbol>& aux, const Assignment& base) {
  std::vector<Assignment> out{base};
  for (const auto& a : aux) {
    std::vector<Assignment> next;
    for (const auto& at : out)
      for (const auto& r : solve_in(a.poly, a.symbol, at)) {
        Assignment b = at;
        b.insert_or_assign(a.symbol, r);
        next.push_back(std::move(b));
      }
    out = std::move(next);
  }
  return out;
}

double rel(const Cx& a, const Cx& b) { return (a - b).abs() / (1.0 + b.abs()); }

std::size_t coord_index(const IntegrableMap& m, const std::string& c) {
  auto it = std::find(m.coords().begin(), m.coords().end(), c);
  if (it == m.coords().end()) throw Error("map " + m.name() + " has no coordinate '" + c + "'");
  return static_cast<std::size_t>(it - m.coords().begin());
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

const std::vector<RecurrenceFixture>& recurrence_fixtures() { return loaded().recurrences; }
const std::vector<RouteFixture>& route_fixtures() { return loaded().routes; }

const RecurrenceFixture& recurrence_fixture(const std::string& label) {
  for (const auto& f : recurrence_fixtures())
    if (f.label == label) return f;
  throw Error("no recurrence fixture '" + label + "'");
}

const RouteFixture& route_fixture(const std::string& label) {
  for (const auto& f : route_fixtures())
    if (f.label == label) return f;
  throw Error("no route fixture '" + label + "'");
}

MPoly fixture_norm(const RecurrenceFixture& fix) {
  MPoly F = fix.F;
  for (auto it = fix.aux.rbegin(); it != fix.aux.rend(); ++it)
    if (F.has_var(it->symbol)) F = resultant(F, it->poly, it->symbol);
  return F.primitive();
}

namespace {

// Points of the variety over p's reduced coordinates: p together with the
// other solutions in the eliminated coordinate when there is exactly one.
std::vector<PointC> fiber(const IntegrableMap& m, const VarietyGenerator& g, const PointC& p) {
  std::vector<PointC> out{p};
  if (g.eliminate.size() != 1) return out;
  const std::string& z = g.eliminate.front();
  const std::size_t iz = coord_index(m, z);
  Assignment at = m.assignment(p);
  at.erase(z);
  for (const auto& num : g.composed_numerators()) {
    if (!num.has_var(z)) continue;
    const auto c = trimmed(univariate_coeffs(num, z, at));
    if (c.empty()) continue;
    for (const auto& r : roots(c)) {
      PointC q = p;
      q[iz] = r;
      bool seen = false;
      for (const auto& o : out) seen = seen || relative_distance(o, q) <= 1e-9;
      if (seen) continue;
      try {
        if (membership(g, q, 1e-8).member) out.push_back(std::move(q));
      } catch (const Error&) {
      }
    }
    break;
  }
  return out;
}

// Orbits of length n from the fiber points that return within tol.
std::vector<std::vector<PointC>> fiber_cycles(const IntegrableMap& m, const VarietyGenerator& g,
                                              const PointC& p, int n, double tol) {
  std::vector<std::vector<PointC>> out;
  for (const auto& q : fiber(m, g, p)) {
    try {
      auto orbit = iterate(m, q, n);
      if (relative_distance(q, orbit.back()) <= tol) out.push_back(std::move(orbit));
    } catch (const Error&) {
    }
  }
  return out;
}

}  // namespace

FixtureVerdict check_fixture(const RecurrenceFixture& fix, double tol, int samples,
                             std::uint64_t seed) {
  FixtureVerdict v;
  v.label = fix.label;
  const IntegrableMap m = fix.map();
  const VarietyGenerator g = gamma_get(m, fix.period);
  const std::size_t t = coord_index(m, fix.target);
  const std::string image = image_name(fix.target);
  const auto n = static_cast<std::size_t>(fix.period);

  for (int i = 0; i < samples; ++i) {
    ++v.samples;
    try {
      const PointC p = sample_on_variety(g, derive_seed(seed, static_cast<std::uint64_t>(i)));
      const auto cycles = fiber_cycles(m, g, p, fix.period, tol);
      if (cycles.empty() || relative_distance(cycles.front().front(), p) > 0.0)
        throw SamplingError("sample does not return");
      // Images reachable in one step along some route through the fiber.
      std::vector<Cx> allowed;
      for (const auto& c : cycles) {
        allowed.push_back(c[1][t]);
        allowed.push_back(c[n - 1][t]);
      }
      const Cx forward = cycles.front()[1][t];

      double best = kInf;
      for (const auto& at : branches(fix.aux, m.assignment(p))) {
        const auto rs = solve_in(fix.F, image, at);
        double worst = kInf;
        for (const auto& r : rs) worst = std::min(worst, rel(r, forward));
        for (const auto& r : rs) {
          double d = kInf;
          for (const auto& x : allowed) d = std::min(d, rel(r, x));
          worst = std::max(worst, d);
        }
        best = std::min(best, worst);
      }
      if (best <= tol) {
        ++v.passed;
        v.max_residual = std::max(v.max_residual, best);
      } else if (v.note.empty()) {
        std::ostringstream os;
        os << "sample " << i << ": roots miss the fiber orbits by " << best;
        v.note = os.str();
      }
    } catch (const Error&) {
      ++v.skipped;
    }
  }

  if (fix.derive) {
    try {
      const auto factors = eliminate(recurrence_problem(m, fix.period, fix.target), seed);
      // The norm over auxiliaries picks up factors free of the image.
      std::vector<MPoly> targets{fixture_norm(fix)};
      if (!fix.aux.empty()) {
        targets.clear();
        for (const auto& piece : split_factors(fixture_norm(fix)))
          if (piece.has_var(image)) targets.push_back(piece);
      }
      bool match = false;
      for (const auto& f : factors)
        for (const auto& t : targets) match = match || equal_up_to_scale(f, t);
      v.derived = match;
      if (!match && v.note.empty()) {
        std::ostringstream os;
        os << "derived:";
        for (const auto& f : factors) os << " [" << f.str() << "]";
        v.note = os.str();
      }
    } catch (const Error& e) {
      v.derived = false;
      if (v.note.empty()) v.note = std::string("derivation failed: ") + e.what();
    }
  }
  return v;
}

ExactCycleResult check_route_exact(const RouteFixture& fix, int points, std::uint64_t seed) {
  ExactCycleResult out;
  if (!fix.aux.empty() || fix.routes.empty()) throw Error(fix.label + ": not an exact fixture");
  const auto& route = fix.routes.front();
  const auto& step1 = route.front();
  SplitMix64 g(seed);
  for (int attempt = 0; out.points < points && attempt < 10 * points; ++attempt) {
    ExactAssignment p;
    for (const auto& c : fix.coords) p.insert_or_assign(c, draw_rational(g, 9, 7));
    try {
      ExactAssignment cur = p;
      bool step_ok = true;
      std::string where;
      for (int k = 1; k <= fix.period; ++k) {
        ExactAssignment next;
        for (std::size_t j = 0; j < fix.coords.size(); ++j)
          next.insert_or_assign(fix.coords[j], step1[j].eval_exact(cur));
        if (k < fix.period) {
          const auto& printed = route[static_cast<std::size_t>(k - 1)];
          for (std::size_t j = 0; j < fix.coords.size(); ++j)
            if (printed[j].eval_exact(p) != next.at(fix.coords[j]) && step_ok) {
              step_ok = false;
              where = "step " + std::to_string(k) + " coordinate " + fix.coords[j];
            }
        }
        cur = std::move(next);
      }
      ++out.points;
      if (cur != p) ++out.failures;
      if (!step_ok) {
        ++out.step_mismatches;
        if (out.first_mismatch.empty()) out.first_mismatch = where;
      }
    } catch (const PoleError&) {
    }
  }
  return out;
}

FixtureVerdict check_routes(const RouteFixture& fix, double tol, int samples, std::uint64_t seed,
                            int exact_points) {
  FixtureVerdict v;
  v.label = fix.label;
  const IntegrableMap m = fix.map();
  const VarietyGenerator g = gamma_get(m, fix.period);
  std::vector<std::size_t> idx;
  for (const auto& c : fix.coords) idx.push_back(coord_index(m, c));
  const int n = fix.period;

  for (int i = 0; i < samples; ++i) {
    ++v.samples;
    try {
      const PointC p = sample_on_variety(g, derive_seed(seed, static_cast<std::uint64_t>(i)));
      const auto cycles = fiber_cycles(m, g, p, n, tol);
      if (cycles.empty()) throw SamplingError("sample does not return");

      // Distance of evaluated route states from a cycle read in one direction.
      auto distance = [&](const std::vector<PointC>& states, const std::vector<PointC>& cycle,
                          bool forward) {
        double d = 0.0;
        for (int k = 1; k < n; ++k) {
          const auto& truth = cycle[static_cast<std::size_t>(forward ? k : n - k)];
          const auto& state = states[static_cast<std::size_t>(k - 1)];
          for (std::size_t j = 0; j < idx.size(); ++j) d = std::max(d, rel(state[j], truth[idx[j]]));
        }
        return d;
      };

      double best = kInf;
      for (const auto& at : branches(fix.aux, m.assignment(p))) {
        double worst = 0.0;
        std::vector<std::vector<int>> dirs(cycles.size());  // bit 1 forward, bit 2 backward
        for (const auto& route : fix.routes) {
          double route_best = kInf;
          try {
            std::vector<PointC> states;
            for (const auto& st : route) {
              PointC s;
              for (const auto& f : st) s.push_back(f.eval(at, kPoleTol));
              states.push_back(std::move(s));
            }
            for (std::size_t c = 0; c < cycles.size(); ++c) {
              const double df = distance(states, cycles[c], true);
              const double db = fix.reversed ? distance(states, cycles[c], false) : kInf;
              route_best = std::min({route_best, df, db});
              dirs[c].push_back((df <= tol ? 1 : 0) | (db <= tol ? 2 : 0));
            }
          } catch (const Error&) {
          }
          worst = std::max(worst, route_best);
        }
        if (fix.reversed && n > 2) {
          // Some fiber cycle must be traversed both ways by distinct routes.
          bool both = false;
          for (const auto& d : dirs)
            for (std::size_t r1 = 0; r1 < d.size(); ++r1)
              for (std::size_t r2 = 0; r2 < d.size(); ++r2)
                both = both || (r1 != r2 && (d[r1] & 1) && (d[r2] & 2));
          if (!both) worst = kInf;
        }
        best = std::min(best, worst);
      }
      if (best <= tol) {
        ++v.passed;
        v.max_residual = std::max(v.max_residual, best);
      } else if (v.note.empty()) {
        std::ostringstream os;
        os << "sample " << i << ": routes miss the fiber orbits by " << best;
        v.note = os.str();
      }
    } catch (const Error&) {
      ++v.skipped;
    }
  }

  if (fix.exact) {
    const ExactCycleResult r = check_route_exact(fix, exact_points, seed);
    v.exact = r.points == exact_points && r.failures == 0 && r.step_mismatches == 0;
    if (r.failures == 0 && r.step_mismatches > 0) {
      const std::string s = "cycle closes exactly; printed " + r.first_mismatch +
                            " differs from the iterate";
      v.note = v.note.empty() ? s : v.note + "; " + s;
    }
  }
  return v;
}

std::vector<FixtureDiff> compare_with_fixtures(const IntegrableMap& m, int period,
                                               const std::string& target,
                                               const std::vector<MPoly>& factors) {
  std::vector<FixtureDiff> out;
  const std::string image = image_name(target);
  std::map<std::string, MPoly, std::less<>> values;
  for (const auto& [k, v] : m.params()) values.emplace(k, MPoly(v));
  for (const auto& fix : recurrence_fixtures()) {
    if (fix.map_name != m.name() || fix.period != period || fix.target != target) continue;
    std::vector<MPoly> expected;
    if (fix.aux.empty()) {
      const MPoly F = fix.printed.substitute(values);
      bool closed = true;
      for (const auto& v : F.vars())
        closed = closed && (v == image || std::find(m.coords().begin(), m.coords().end(), v) !=
                                              m.coords().end());
      if (!closed) continue;
      expected.push_back(F.primitive());
    } else {
      if (fix.map().params() != m.params()) continue;
      for (const auto& piece : split_factors(fixture_norm(fix)))
        if (piece.has_var(image)) expected.push_back(piece);
    }
    FixtureDiff d;
    d.label = fix.label;
    for (const auto& e : expected) d.expected += (d.expected.empty() ? "" : "; ") + e.str();
    for (const auto& f : factors)
      for (const auto& e : expected) d.match = d.match || equal_up_to_scale(f, e);
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace ivpp
