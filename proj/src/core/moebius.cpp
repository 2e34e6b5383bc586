#include "ivpp/moebius.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>

#include "ivpp/algebra/polyops.hpp"
#include "ivpp/algebra/roots.hpp"
#include "ivpp/errors.hpp"

namespace ivpp {

namespace {

void require_nonzero(const RatFunc& f, const char* what) {
  if (f.is_zero()) throw DegenerateFamilyError(std::string("identically zero denominator ") + what);
}

MPoly normalize_gamma(const MPoly& g) {
  MPoly p = g.primitive();
  const auto it = p.terms().find(Exponents(p.vars().size(), 0));
  if (it != p.terms().end() && it->second.sign() < 0) p = -p;
  return p;
}

// Newton steps on the ascending coefficients c, kept only while |p| drops.
Cx polish_root(const std::vector<Cx>& c, Cx z) {
  for (int it = 0; it < 3; ++it) {
    std::complex<double> p = 0.0, dp = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) {
      dp = dp * z.value() + p;
      p = p * z.value() + c[k].value();
    }
    if (std::abs(dp) == 0.0 || std::abs(p) == 0.0) break;
    const std::complex<double> next = z.value() - p / dp;
    std::complex<double> q = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) q = q * next + c[k].value();
    if (!(std::abs(q) < std::abs(p))) break;
    z = Cx(next);
  }
  return z;
}

}  // namespace

MoebiusParams moebius_symbols() {
  return {RatFunc(MPoly::variable("a")), RatFunc(MPoly::variable("b")),
          RatFunc(MPoly::variable("h"))};
}

MoebiusState param_step(const MoebiusParams& base, const MoebiusState& s) {
  const RatFunc one(MPoly(1));
  const RatFunc den_a = s.h + base.a * s.b;
  const RatFunc den_b = one + base.b * s.h * s.a;
  require_nonzero(den_a, "h^(n) + a b^(n)");
  require_nonzero(den_b, "1 + b h^(n) a^(n)");
  return {(base.a + s.a * s.h) / den_a, (s.b + base.b * s.h) / den_b, base.h * den_a / den_b};
}

MoebiusState param_power(const MoebiusParams& base, int n) {
  if (n < 1) throw ArityError("param_power: n must be positive");
  MoebiusState s = base;
  for (int k = 1; k < n; ++k) s = param_step(base, s);
  return s;
}

MPoly derive_gamma(int n) {
  if (n < 2 || n > 8) throw ArityError("derive_gamma: period must be in 2..8");
  static std::mutex mu;
  static std::map<int, MPoly> memo;
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find(n); it != memo.end()) return it->second;
  }
  const MoebiusParams base = moebius_symbols();
  const MoebiusState s = param_power(base, n + 1);
  const MPoly na = (s.a - base.a).num();
  const MPoly nb = (s.b - base.b).num();
  const MPoly nh = (s.h - base.h).num();
  MPoly g = gcd(gcd(na, nb), nh);
  if (g.is_constant())
    throw DegenerateFamilyError("periodicity conditions share no factor: " + na.str() + "; " +
                                nb.str() + "; " + nh.str());
  g = strip_factor(g, MPoly::parse("a*b - 1"));
  for (const char* v : {"a", "b", "h"}) g = strip_factor(g, MPoly::variable(v));
  for (int d = 2; d < n; ++d)
    if (n % d == 0) g = strip_factor(g, derive_gamma(d));
  // Repeated factors carry no extra information about the variety.
  const MPoly dg = g.derivative("h");
  if (!dg.is_zero()) g = exact_divide(g, gcd(g, dg));
  g = normalize_gamma(g);
  std::lock_guard lock(mu);
  memo.emplace(n, g);
  return g;
}

namespace {

MPoly substitute_h(const MPoly& gamma) {
  // gamma(h) = sum c_k(a, b) h^k with h = X (1 + b x) / (x + a), cleared by
  // (x + a)^deg_h.
  const auto c = gamma.coeffs("h");
  const int deg = static_cast<int>(c.size()) - 1;
  const MPoly lead = MPoly::parse("X*(1 + b*x)");
  const MPoly den = MPoly::parse("x + a");
  MPoly F;
  for (int k = 0; k <= deg; ++k) F = F + c[static_cast<std::size_t>(k)] * lead.pow(k) * den.pow(deg - k);
  return F.primitive();
}

}  // namespace

RecurrenceRelation recurrence_F(int n) {
  return {substitute_h(derive_gamma(n)), n, "moebius2d"};
}

RecurrenceRelation recurrence_F(int n, const BigRational& a, const BigRational& b) {
  if (a * b == BigRational(1)) throw DegenerateParametersError("moebius: a*b = 1");
  ExactAssignment ab{{"a", a}, {"b", b}};
  MPoly F = recurrence_F(n).F.substitute(ab);
  if (F.is_zero()) throw DegenerateParametersError("moebius: recurrence vanishes identically");
  return {F.primitive(), n, "moebius2d"};
}

std::pair<Cx, Cx> moebius_mu(const Cx& a, const Cx& b) {
  const Cx ab = a * b;
  const Cx root = sqrt((Cx(3.0) + ab) * (ab - Cx(1.0)));
  return {(Cx(1.0) + ab + root) * Cx(0.5), (Cx(1.0) + ab - root) * Cx(0.5)};
}

std::vector<Cx> moebius_route3(const Cx& a, const Cx& b, const Cx& x, bool plus) {
  const auto [mp, mm] = moebius_mu(a, b);
  const Cx mu = plus ? mp : mm;
  auto f = [&](const Cx& t) { return -mu * (t + a) / (Cx(1.0) + b * t); };
  const Cx x1 = f(x);
  // mu mu' = 1, so f^2 = f^-1 is x -> -(x + a mu)/(mu + b x).
  const Cx x2 = -(x + a * mu) / (mu + b * x);
  return {x, x1, x2, f(x2)};
}

std::vector<Cx> follow_moebius(const RecurrenceRelation& F, const Cx& a, const Cx& b,
                               const Cx& x0, const Cx& X1, int steps) {
  auto H = [&](const Cx& x, const Cx& X) { return X * (Cx(1.0) + b * x) / (x + a); };
  std::vector<Cx> out{x0, X1};
  const Cx h0 = H(x0, X1);
  for (int k = 1; k < steps; ++k) {
    const Cx x = out.back();
    const auto c = univariate_coeffs(F.F, "X", {{"x", x}});
    const auto rts = roots(c, 0.0);
    const Cx* best = nullptr;
    double dist = 0.0;
    for (const auto& r : rts) {
      const double d = (H(x, r) - h0).abs();
      if (!best || d < dist) best = &r, dist = d;
    }
    if (!best) throw BranchSelectionError("no root to follow");
    // The chosen root approximates the level-set point h0 (x + a)/(1 + b x);
    // snap to it when they agree to root accuracy, so clustered roots do not
    // leak their conditioning into the orbit.
    const Cx level = h0 * (x + a) / (Cx(1.0) + b * x);
    const Cx root = polish_root(c, *best);
    out.push_back((level - root).abs() <= 1e-6 * (1.0 + root.abs()) ? level : root);
  }
  return out;
}

}  // namespace ivpp
