#include "ivpp/catalog.hpp"

#include <algorithm>
#include <array>

#include "catalog_internal.hpp"
#include "ivpp/algebra/polyops.hpp"
#include "ivpp/errors.hpp"
#include "ivpp/seeding.hpp"

namespace ivpp {

namespace {

using C = std::complex<double>;

MPoly P(std::string_view s) { return MPoly::parse(s); }

RatFunc bound(std::string_view num, std::string_view den, const ParamBindings& params) {
  return RatFunc(P(num).substitute(params), P(den).substitute(params));
}

const BigRational& require(const ParamBindings& params, const std::string& map,
                           const std::string& key) {
  auto it = params.find(key);
  if (it == params.end())
    throw MissingParameterError("map " + map + " requires parameter '" + key + "'");
  return it->second;
}

void reject_unknown(const ParamBindings& params, const std::string& map,
                    const std::vector<std::string>& allowed) {
  for (const auto& [k, v] : params)
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      throw UnknownParameterError("map " + map + " has no parameter '" + k + "'");
}

C eval_checked(const CompiledPoly& num, const CompiledPoly& den, std::span<const C> x,
               const std::string& what) {
  const C n = num(x), d = den(x);
  if (std::abs(d) <= kPoleTol * (1.0 + std::abs(n))) throw PoleError("pole in " + what);
  const C v = n / d;
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw NonFiniteError("non-finite value in " + what);
  return v;
}

std::vector<C> raw(const PointC& p) {
  std::vector<C> out;
  out.reserve(p.size());
  for (const auto& z : p) out.push_back(z.value());
  return out;
}

// ---- individual maps ----------------------------------------------------------

IntegrableMap make_lyness(const std::string& name, const ParamBindings& params) {
  if (name == "lyness2") {
    reject_unknown(params, name, {"a"});
    const BigRational a = require(params, name, "a");
    if (a.is_zero()) throw DegenerateParametersError("lyness2 with a = 0 is not invertible");
    return IntegrableMap(name, {"x"}, params, {RatFunc(MPoly(a), P("x"))}, SolveKind::kExplicit,
                         {}, {});
  }
  reject_unknown(params, name, {});
  if (name == "lyness5")
    return IntegrableMap(name, {"x", "y"}, params, {RatFunc::parse("1 + x", "y"), RatFunc::parse("x")},
                         SolveKind::kExplicit, {}, {});
  return IntegrableMap(name, {"x", "y", "z"}, params,
                       {RatFunc::parse("1 + x + y", "z"), RatFunc::parse("x"), RatFunc::parse("y")},
                       SolveKind::kExplicit, {}, {});
}

IntegrableMap make_lv3(const ParamBindings& params) {
  reject_unknown(params, "lv3", {});
  std::vector<RatFunc> comps = {
      RatFunc::parse("x*(1 - y + y*z)", "1 - z + z*x"),
      RatFunc::parse("y*(1 - z + z*x)", "1 - x + x*y"),
      RatFunc::parse("z*(1 - x + x*y)", "1 - y + y*z"),
  };
  return IntegrableMap("lv3", {"x", "y", "z"}, params, std::move(comps), SolveKind::kExplicit,
                       {"r", "s"},
                       {RatFunc::parse("x*y*z"), RatFunc::parse("(1 - x)*(1 - y)*(1 - z)")});
}

IntegrableMap make_lv4(const ParamBindings& params) {
  reject_unknown(params, "lv4", {});
  return IntegrableMap("lv4", lv_coordinate_names(4), params, lv_explicit_components(4),
                       SolveKind::kLotkaVolterra, {"H1", "H2", "r"}, lv_invariants(4));
}

IntegrableMap make_toda3(const ParamBindings& params) {
  reject_unknown(params, "toda3", {});
  const char* A = "z*u + z*x + w*u";
  const char* B = "y*w + y*z + v*w";
  const char* Cq = "x*v + x*y + u*v";
  auto f = [](const std::string& lead, const char* n, const char* d) {
    return RatFunc(P(lead) * P(n), P(d));
  };
  std::vector<RatFunc> comps = {f("y", A, B), f("z", Cq, A), f("x", B, Cq),
                                f("u", B, A), f("v", A, Cq), f("w", Cq, B)};
  return IntegrableMap("toda3", {"x", "y", "z", "u", "v", "w"}, params, std::move(comps),
                       SolveKind::kExplicit, {"t1", "t2", "t3", "t3p"},
                       {RatFunc::parse("x + y + z + u + v + w"),
                        RatFunc::parse("x*y + y*z + z*x + u*v + v*w + w*u + x*v + y*w + z*u"),
                        RatFunc::parse("x*y*z"), RatFunc::parse("u*v*w")});
}

IntegrableMap make_moebius2d(const ParamBindings& params) {
  reject_unknown(params, "moebius2d", {"a", "b"});
  const BigRational a = require(params, "moebius2d", "a");
  const BigRational b = require(params, "moebius2d", "b");
  if (a * b == BigRational(1))
    throw DegenerateParametersError("moebius2d with a*b = 1 collapses the Moebius factor");
  std::vector<RatFunc> comps = {bound("(x + a)*y", "1", params),
                                bound("y*(1 + b*x)", "1 + b*y*(x + a)", params)};
  return IntegrableMap("moebius2d", {"x", "y"}, params, std::move(comps), SolveKind::kExplicit,
                       {"H"}, {bound("y*(1 + b*x)", "1", params)});
}

IntegrableMap make_euler(const ParamBindings& given) {
  reject_unknown(given, "euler", {"alpha", "beta", "gamma", "I", "J", "K"});
  ParamBindings params;
  BigRational al, be, ga;
  std::array<BigRational, 3> mom;
  bool have_moments = false;
  if (given.count("I") || given.count("J") || given.count("K")) {
    mom = {require(given, "euler", "I"), require(given, "euler", "J"), require(given, "euler", "K")};
    for (const auto& m : mom)
      if (m.is_zero()) throw DegenerateParametersError("euler: moments of inertia must be nonzero");
    al = (mom[1] - mom[2]) / (BigRational(2) * mom[0]);
    be = (mom[2] - mom[0]) / (BigRational(2) * mom[1]);
    ga = (mom[0] - mom[1]) / (BigRational(2) * mom[2]);
    have_moments = true;
  } else {
    al = require(given, "euler", "alpha");
    be = require(given, "euler", "beta");
    ga = require(given, "euler", "gamma");
    // Moments exist iff the 3x3 system 2aI - J + K = 0, I + 2bJ - K = 0,
    // -I + J + 2cK = 0 is singular, i.e. a + b + c + 4abc = 0.
    if ((al + be + ga + BigRational(4) * al * be * ga).is_zero()) {
      const std::array<BigRational, 3> r1 = {BigRational(2) * al, -1, 1};
      const std::array<BigRational, 3> r2 = {1, BigRational(2) * be, -1};
      const std::array<BigRational, 3> r3 = {-1, 1, BigRational(2) * ga};
      auto cross = [](const std::array<BigRational, 3>& u, const std::array<BigRational, 3>& v) {
        return std::array<BigRational, 3>{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                                          u[0] * v[1] - u[1] * v[0]};
      };
      for (const auto& cand : {cross(r1, r2), cross(r2, r3), cross(r1, r3)}) {
        if (!cand[0].is_zero() && !cand[1].is_zero() && !cand[2].is_zero()) {
          mom = cand;
          have_moments = true;
          break;
        }
      }
    }
  }
  params["alpha"] = al;
  params["beta"] = be;
  params["gamma"] = ga;
  if (have_moments) {
    params["I"] = mom[0];
    params["J"] = mom[1];
    params["K"] = mom[2];
  }

  const MPoly x = P("x"), y = P("y"), z = P("z");
  const MPoly a(al), b(be), g(ga);
  // [[1, -a z, -a y], [-b z, 1, -b x], [-g y, -g x, 1]] (X, Y, Z)^T = (x, y, z)^T
  std::array<std::array<MPoly, 3>, 3> M = {{{MPoly(1), -a * z, -a * y},
                                            {-b * z, MPoly(1), -b * x},
                                            {-g * y, -g * x, MPoly(1)}}};
  const std::array<MPoly, 3> rhs = {x, y, z};
  auto det3 = [](const std::array<std::array<MPoly, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const MPoly det = det3(M);
  std::vector<RatFunc> comps;
  for (std::size_t col = 0; col < 3; ++col) {
    auto Mc = M;
    for (std::size_t row = 0; row < 3; ++row) Mc[row][col] = rhs[row];
    comps.emplace_back(det3(Mc), det);
  }

  const MPoly den = MPoly(1) - b * g * x * x;
  std::array<BigRational, 3> c1, c2;
  if (have_moments) {
    c1 = mom;
    c2 = {mom[0] * mom[0], mom[1] * mom[1], mom[2] * mom[2]};
  } else {
    // Quadratic forms orthogonal to (alpha, beta, gamma).
    const std::array<std::array<BigRational, 3>, 3> cands = {
        {{0, ga, -be}, {-ga, 0, al}, {be, -al, 0}}};
    std::vector<std::array<BigRational, 3>> picked;
    for (const auto& c : cands) {
      if (c[0].is_zero() && c[1].is_zero() && c[2].is_zero()) continue;
      if (!picked.empty()) {
        const auto& p = picked[0];
        const bool parallel = (p[0] * c[1] - p[1] * c[0]).is_zero() &&
                              (p[1] * c[2] - p[2] * c[1]).is_zero() &&
                              (p[0] * c[2] - p[2] * c[0]).is_zero();
        if (parallel) continue;
      }
      picked.push_back(c);
      if (picked.size() == 2) break;
    }
    if (picked.size() < 2) throw DegenerateParametersError("euler: alpha = beta = gamma = 0 needs moments");
    c1 = picked[0];
    c2 = picked[1];
  }
  auto form = [&](const std::array<BigRational, 3>& c) {
    return MPoly(c[0]) * x * x + MPoly(c[1]) * y * y + MPoly(c[2]) * z * z;
  };
  return IntegrableMap("euler", {"x", "y", "z"}, params, std::move(comps), SolveKind::kEulerTop,
                       {"H1", "H2"}, {RatFunc(form(c1), den), RatFunc(form(c2), den)});
}

IntegrableMap make_qrt(const ParamBindings& params) {
  static const std::vector<std::string> keys = {"a1", "b1", "c1", "d1", "e1", "f1",
                                                "a2", "b2", "c2", "d2", "e2", "f2"};
  reject_unknown(params, "qrt", keys);
  for (const auto& k : keys) require(params, "qrt", k);
  auto q = [&](char letter, int which) {
    return MPoly(params.at(std::string(1, letter) + std::to_string(which)));
  };
  // xi, eta, rho of one parameter vector as polynomials in `t`.
  auto xi = [&](int w, const MPoly& t) { return q('a', w) * t * t + q('b', w) * t + q('c', w); };
  auto eta = [&](int w, const MPoly& t) {
    return q('b', w) * t * t + (q('d', w) - q('c', w) * MPoly(2)) * t + q('e', w);
  };
  auto rho = [&](int w, const MPoly& t) { return q('c', w) * t * t + q('e', w) * t + q('f', w); };
  const MPoly x = P("x"), y = P("y");
  const MPoly num = eta(1, y) * rho(2, y) - rho(1, y) * eta(2, y) -
                    x * (rho(1, y) * xi(2, y) - xi(1, y) * rho(2, y));
  const MPoly den = rho(1, y) * xi(2, y) - xi(1, y) * rho(2, y) -
                    x * (xi(1, y) * eta(2, y) - eta(1, y) * xi(2, y));
  if (den.is_zero()) throw DegenerateParametersError("qrt: map denominator vanishes identically");
  const MPoly hden = xi(2, x) * y * y + eta(2, x) * y + rho(2, x);
  if (hden.is_zero()) throw DegenerateParametersError("qrt: invariant denominator vanishes identically");
  const MPoly hnum = -(xi(1, x) * y * y + eta(1, x) * y + rho(1, x));
  return IntegrableMap("qrt", {"x", "y"}, params, {RatFunc(y), RatFunc(num, den)},
                       SolveKind::kExplicit, {"H"}, {RatFunc(hnum, hden)});
}

}  // namespace

IntegrableMap::IntegrableMap(std::string name, std::vector<std::string> coords,
                             ParamBindings params, std::vector<RatFunc> components,
                             SolveKind solve, std::vector<std::string> invariant_names,
                             std::vector<RatFunc> invariants)
    : name_(std::move(name)),
      coords_(std::move(coords)),
      params_(std::move(params)),
      components_(std::move(components)),
      solve_(solve),
      invariant_names_(std::move(invariant_names)),
      invariants_(std::move(invariants)) {
  if (components_.size() != coords_.size())
    throw ArityError("map " + name_ + ": component count differs from dimension");
  if (invariant_names_.size() != invariants_.size())
    throw ArityError("map " + name_ + ": invariant names and invariants differ in length");
  auto c = std::make_shared<Compiled>();
  for (const auto& f : components_) {
    if (f.den().is_zero()) throw DegenerateParametersError("zero component denominator");
    c->num.emplace_back(f.num(), coords_);
    c->den.emplace_back(f.den(), coords_);
  }
  for (const auto& h : invariants_) {
    c->inv_num.emplace_back(h.num(), coords_);
    c->inv_den.emplace_back(h.den(), coords_);
  }
  auto param = [&](const char* k) {
    auto it = params_.find(k);
    return it == params_.end() ? 0.0 : it->second.to_double();
  };
  c->alpha = param("alpha");
  c->beta = param("beta");
  c->gamma = param("gamma");
  compiled_ = std::move(c);
}

Assignment IntegrableMap::assignment(const PointC& p) const {
  if (p.size() != dim()) throw ArityError("point dimension differs from map dimension");
  Assignment a;
  for (std::size_t j = 0; j < dim(); ++j) a.emplace(coords_[j], p[j]);
  return a;
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"lyness2", "lyness5", "lyness8",   "lv3", "lv4",
                                                 "toda3",   "euler",   "moebius2d", "qrt"};
  return names;
}

std::vector<std::string> catalog_parameters(const std::string& name) {
  if (name == "lyness2") return {"a"};
  if (name == "moebius2d") return {"a", "b"};
  if (name == "euler") return {"alpha", "beta", "gamma"};
  if (name == "qrt") return {"a1", "b1", "c1", "d1", "e1", "f1", "a2", "b2", "c2", "d2", "e2", "f2"};
  if (std::find(catalog_names().begin(), catalog_names().end(), name) == catalog_names().end())
    throw UnknownMapError("unknown map '" + name + "'");
  return {};
}

IntegrableMap catalog_get(const std::string& name, const ParamBindings& params) {
  auto build = [&]() -> IntegrableMap {
    if (name == "lyness2" || name == "lyness5" || name == "lyness8") return make_lyness(name, params);
    if (name == "lv3") return make_lv3(params);
    if (name == "lv4") return make_lv4(params);
    if (name == "toda3") return make_toda3(params);
    if (name == "euler") return make_euler(params);
    if (name == "moebius2d") return make_moebius2d(params);
    if (name == "qrt") return make_qrt(params);
    throw UnknownMapError("unknown map '" + name + "'");
  };
  IntegrableMap m = build();
  if (const std::size_t bad = check_invariants_exact(m, 20, 0x5eed); bad != 0)
    throw DegenerateParametersError("map " + name + ": invariant " + m.invariant_names()[bad - 1] +
                                    " is not conserved");
  return m;
}

PointC apply_explicit(const IntegrableMap& m, const PointC& p) {
  if (p.size() != m.dim()) throw ArityError("apply: point dimension mismatch");
  const auto& c = m.compiled();
  const auto x = raw(p);
  PointC out;
  out.reserve(m.dim());
  for (std::size_t j = 0; j < m.dim(); ++j)
    out.emplace_back(eval_checked(c.num[j], c.den[j], x, m.name() + " component " + m.coords()[j]));
  return out;
}

namespace {

PointC euler_solve(const IntegrableMap& m, const PointC& p) {
  const auto& c = m.compiled();
  const C x = p[0].value(), y = p[1].value(), z = p[2].value();
  const C a = c.alpha, b = c.beta, g = c.gamma;
  C A[3][4] = {{1.0, -a * z, -a * y, x}, {-b * z, 1.0, -b * x, y}, {-g * y, -g * x, 1.0, z}};
  double scale = 0.0;
  for (auto& row : A)
    for (int k = 0; k < 3; ++k) scale = std::max(scale, std::abs(row[k]));
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    if (std::abs(A[piv][col]) <= kPoleTol * scale)
      throw SingularSystemError("euler: Hirota-Kimura linear system is singular");
    if (piv != col)
      for (int k = 0; k < 4; ++k) std::swap(A[col][k], A[piv][k]);
    for (int r = col + 1; r < 3; ++r) {
      const C f = A[r][col] / A[col][col];
      for (int k = col; k < 4; ++k) A[r][k] -= f * A[col][k];
    }
  }
  C sol[3];
  for (int r = 2; r >= 0; --r) {
    C s = A[r][3];
    for (int k = r + 1; k < 3; ++k) s -= A[r][k] * sol[k];
    sol[r] = s / A[r][r];
  }
  return {Cx(sol[0]), Cx(sol[1]), Cx(sol[2])};
}

}  // namespace

PointC apply(const IntegrableMap& m, const PointC& p) {
  if (p.size() != m.dim()) throw ArityError("apply: point dimension mismatch");
  switch (m.solve_kind()) {
    case SolveKind::kExplicit:
      return apply_explicit(m, p);
    case SolveKind::kLotkaVolterra:
      return lv_cyclic_step(p, m.invariants(), m.coords());
    case SolveKind::kEulerTop:
      return euler_solve(m, p);
  }
  throw Error("unreachable");
}

std::vector<Cx> invariants_eval(const IntegrableMap& m, const PointC& p) {
  if (p.size() != m.dim()) throw ArityError("invariants_eval: point dimension mismatch");
  const auto& c = m.compiled();
  const auto x = raw(p);
  std::vector<Cx> out;
  for (std::size_t i = 0; i < c.inv_num.size(); ++i)
    out.emplace_back(eval_checked(c.inv_num[i], c.inv_den[i], x, "invariant " + m.invariant_names()[i]));
  return out;
}

namespace {

ExactAssignment exact_assignment(const IntegrableMap& m, const std::vector<BigRational>& p) {
  if (p.size() != m.dim()) throw ArityError("point dimension mismatch");
  ExactAssignment a;
  for (std::size_t j = 0; j < m.dim(); ++j) a.emplace(m.coords()[j], p[j]);
  return a;
}

}  // namespace

std::vector<BigRational> apply_exact(const IntegrableMap& m, const std::vector<BigRational>& p) {
  const auto a = exact_assignment(m, p);
  std::vector<BigRational> out;
  for (const auto& f : m.components()) out.push_back(f.eval_exact(a));
  return out;
}

std::vector<BigRational> invariants_exact(const IntegrableMap& m,
                                          const std::vector<BigRational>& p) {
  const auto a = exact_assignment(m, p);
  std::vector<BigRational> out;
  for (const auto& h : m.invariants()) out.push_back(h.eval_exact(a));
  return out;
}

std::size_t check_invariants_exact(const IntegrableMap& m, int points, std::uint64_t seed) {
  if (m.invariants().empty()) return 0;
  SplitMix64 g(seed);
  int done = 0;
  for (int attempt = 0; done < points && attempt < 50 * points; ++attempt) {
    std::vector<BigRational> p;
    for (std::size_t j = 0; j < m.dim(); ++j) p.push_back(draw_rational(g, 9, 7));
    std::vector<BigRational> before, after;
    try {
      before = invariants_exact(m, p);
      after = invariants_exact(m, apply_exact(m, p));
    } catch (const PoleError&) {
      continue;
    }
    for (std::size_t i = 0; i < before.size(); ++i)
      if (before[i] != after[i]) return i + 1;
    ++done;
  }
  return 0;
}

}  // namespace ivpp
