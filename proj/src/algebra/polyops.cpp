#include "ivpp/algebra/polyops.hpp"

#include <algorithm>

#include "ivpp/errors.hpp"

namespace ivpp {

std::optional<MPoly> try_divide(const MPoly& p, const MPoly& f) {
  if (f.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (p.is_zero()) return MPoly();
  if (f.is_constant()) return p * f.constant_value().inverse();
  for (const auto& v : f.vars())
    if (f.degree(v) > p.degree(v)) return std::nullopt;
  const MPoly both[2] = {p, f};
  const auto vars = merged_vars(both);
  auto rem = p.terms_over(vars);
  const auto ft = f.terms_over(vars);
  const auto& [lf_e, lf_c] = *ft.begin();
  MPoly::TermMap quot;
  const std::size_t n = vars.size();
  Exponents shift(n), e(n);
  while (!rem.empty()) {
    const auto& [lr_e, lr_c] = *rem.begin();
    for (std::size_t k = 0; k < n; ++k) {
      if (lr_e[k] < lf_e[k]) return std::nullopt;
      shift[k] = lr_e[k] - lf_e[k];
    }
    const BigRational c = lr_c / lf_c;
    quot.emplace(shift, c);
    for (const auto& [fe, fc] : ft) {
      for (std::size_t k = 0; k < n; ++k) e[k] = fe[k] + shift[k];
      auto it = rem.find(e);
      if (it == rem.end()) {
        rem.emplace(e, -(c * fc));
      } else {
        it->second -= c * fc;
        if (it->second.is_zero()) rem.erase(it);
      }
    }
  }
  return MPoly::from_terms(vars, quot);
}

MPoly exact_divide(const MPoly& p, const MPoly& f) {
  if (auto q = try_divide(p, f)) return *q;
  // Rebuild the remainder witness for the error message.
  MPoly r = p;
  if (!f.is_zero()) {
    const MPoly both[2] = {p, f};
    const auto vars = merged_vars(both);
    const auto ft = f.terms_over(vars);
    const auto& lf_e = ft.begin()->first;
    MPoly::TermMap stuck;
    while (!r.is_zero()) {
      auto rt = r.terms_over(vars);
      const auto& [le, lc] = *rt.begin();
      bool ok = true;
      Exponents sh(vars.size());
      for (std::size_t k = 0; k < vars.size(); ++k) {
        if (le[k] < lf_e[k]) ok = false;
        else sh[k] = le[k] - lf_e[k];
      }
      MPoly::TermMap one;
      if (!ok) {
        one.emplace(le, lc);
        stuck.emplace(le, lc);
        r -= MPoly::from_terms(vars, one);
        continue;
      }
      one.emplace(sh, lc / ft.begin()->second);
      r -= MPoly::from_terms(vars, one) * f;
    }
    r = MPoly::from_terms(vars, stuck);
  }
  throw InexactDivisionError("exact_divide: " + f.str() + " does not divide " + p.str(),
                             r.str());
}

MPoly strip_factor(const MPoly& p, const MPoly& f, int* count) {
  int n = 0;
  MPoly cur = p;
  if (!f.is_constant() && !cur.is_zero()) {
    while (auto q = try_divide(cur, f)) {
      cur = std::move(*q);
      ++n;
    }
  }
  if (count) *count = n;
  return cur;
}

MPoly pseudo_remainder(const MPoly& p, const MPoly& q, const std::string& var) {
  const int n = q.degree(var);
  if (n < 0) throw std::domain_error("pseudo_remainder by zero");
  int m = p.degree(var);
  if (m < n) return p;
  const MPoly lq = q.coeff(var, n);
  const MPoly v = MPoly::variable(var);
  MPoly r = p;
  int steps = 0;
  while (!r.is_zero() && r.degree(var) >= n) {
    const int dr = r.degree(var);
    r = lq * r - r.coeff(var, dr) * v.pow(static_cast<unsigned>(dr - n)) * q;
    ++steps;
  }
  const int missing = m - n + 1 - steps;
  if (missing > 0) r = r * lq.pow(static_cast<unsigned>(missing));
  return r;
}

MPoly content_in(const MPoly& p, const std::string& var) {
  if (p.is_zero()) return MPoly();
  auto cs = p.coeffs(var);
  // Any nonzero constant coefficient makes the content trivial.
  for (const auto& c : cs)
    if (c.is_constant() && !c.is_zero()) return MPoly(1);
  std::sort(cs.begin(), cs.end(), [](const MPoly& a, const MPoly& b) { return a.size() < b.size(); });
  MPoly g;
  for (const auto& c : cs) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) return MPoly(1);
  }
  return g;
}

namespace {

MPoly primitive_in(const MPoly& p, const std::string& var) {
  return exact_divide(p, content_in(p, var));
}

}  // namespace

MPoly gcd(const MPoly& p0, const MPoly& q0) {
  if (p0.is_zero()) return q0.primitive();
  if (q0.is_zero()) return p0.primitive();
  if (p0.is_constant() || q0.is_constant()) return MPoly(1);
  MPoly p = p0, q = q0;
  // Variables private to one side can only live in the content.
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& v : std::vector<std::string>(p.vars())) {
      if (!q.has_var(v)) {
        p = content_in(p, v);
        changed = true;
        break;
      }
    }
    if (p.is_constant()) return MPoly(1);
    for (const auto& v : std::vector<std::string>(q.vars())) {
      if (!p.has_var(v)) {
        q = content_in(q, v);
        changed = true;
        break;
      }
    }
    if (q.is_constant()) return MPoly(1);
  }
  if (auto d = try_divide(p, q)) return q.primitive();
  if (auto d = try_divide(q, p)) return p.primitive();

  // Main variable: the common one of smallest combined degree.
  std::string var;
  int best = -1;
  for (const auto& v : p.vars()) {
    const int d = p.degree(v) + q.degree(v);
    if (best < 0 || d < best) {
      best = d;
      var = v;
    }
  }
  const MPoly cp = content_in(p, var), cq = content_in(q, var);
  MPoly a = exact_divide(p, cp), b = exact_divide(q, cq);
  const MPoly g = gcd(cp, cq);
  if (a.degree(var) < b.degree(var)) std::swap(a, b);
  for (;;) {
    MPoly r = pseudo_remainder(a, b, var);
    if (r.is_zero()) break;
    if (r.degree(var) == 0) {
      b = MPoly(1);
      break;
    }
    a = std::move(b);
    b = primitive_in(r, var);
  }
  return (g * b).primitive();
}

bool equal_up_to_scale(const MPoly& p, const MPoly& q) {
  if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
  return p * q.leading_coeff() == q * p.leading_coeff();
}

PolyMatrix sylvester_matrix(const MPoly& p, const MPoly& q, const std::string& var) {
  const int m = p.degree(var), n = q.degree(var);
  if (m <= 0 || n <= 0)
    throw NothingToEliminateError("resultant: nothing to eliminate, degree in " + var + " is " +
                                  std::to_string(std::min(m, n)));
  const auto cp = p.coeffs(var), cq = q.coeffs(var);
  const auto size = static_cast<std::size_t>(m + n);
  PolyMatrix s(size, std::vector<MPoly>(size));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k)
      s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] =
          cp[static_cast<std::size_t>(m - k)];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k)
      s[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + k)] =
          cq[static_cast<std::size_t>(n - k)];
  return s;
}

MPoly determinant(PolyMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return MPoly(1);
  int sign = 1;
  MPoly prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k].is_zero()) ++piv;
      if (piv == n) return MPoly();
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = exact_divide(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
      m[i][k] = MPoly();
    }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

MPoly resultant(const MPoly& p, const MPoly& q, const std::string& var) {
  return determinant(sylvester_matrix(p, q, var));
}

}  // namespace ivpp
