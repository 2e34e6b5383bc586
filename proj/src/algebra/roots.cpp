#include "ivpp/algebra/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ivpp/errors.hpp"

namespace ivpp {

namespace {

using C = std::complex<double>;

struct HornerResult {
  C p, dp;
  double bound;  // sum |c_k| |z|^k
};

HornerResult horner(const std::vector<C>& c, C z) {
  C p = c.back(), dp = 0.0;
  double b = std::abs(c.back());
  const double az = std::abs(z);
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[k];
    b = b * az + std::abs(c[k]);
  }
  return {p, dp, b};
}

double rounded(double v) { return std::round(v * 1e12) / 1e12; }

}  // namespace

bool root_order_less(const Cx& a, const Cx& b) {
  const double ar = rounded(a.re()), br = rounded(b.re());
  if (ar != br) return ar < br;
  return rounded(a.im()) < rounded(b.im());
}

std::vector<Cx> roots(const std::vector<Cx>& coeffs, double tol) {
  std::vector<C> c;
  for (const auto& z : coeffs) c.push_back(z.value());
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.size() < 2) throw DegreeError("roots: polynomial has degree 0");
  if (std::abs(c.back()) <= tol)
    throw DegreeError("roots: leading coefficient below tolerance");
  double cmax = 0.0;
  for (const auto& v : c) cmax = std::max(cmax, std::abs(v));

  std::vector<C> out;
  // Exact zero roots.
  std::size_t zeros = 0;
  while (c[zeros] == 0.0) ++zeros;
  out.assign(zeros, C(0.0));
  std::vector<C> q(c.begin() + static_cast<std::ptrdiff_t>(zeros), c.end());
  const std::size_t n = q.size() - 1;

  if (n == 1) {
    out.push_back(-q[0] / q[1]);
  } else if (n > 1) {
    // Initial guesses on a circle of radius given by the Fujiwara-type bound.
    double radius = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      radius = std::max(radius, std::pow(std::abs(q[k] / q[n]), 1.0 / static_cast<double>(n - k)));
    radius = std::max(radius, 1e-3);
    std::vector<C> z(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
      z[k] = std::polar(radius, th);
    }
    const double eps = std::numeric_limits<double>::epsilon();
    std::vector<bool> done(n, false);
    for (int iter = 0; iter < 800; ++iter) {
      bool all = true;
      for (std::size_t k = 0; k < n; ++k) {
        if (done[k]) continue;
        const auto h = horner(q, z[k]);
        if (std::abs(h.p) <= 4.0 * eps * h.bound) {
          done[k] = true;
          continue;
        }
        all = false;
        const C ratio = h.p / h.dp;
        C sum = 0.0;
        for (std::size_t j = 0; j < n; ++j)
          if (j != k) sum += 1.0 / (z[k] - z[j]);
        const C w = ratio / (1.0 - ratio * sum);
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
        z[k] -= w;
        if (std::abs(w) <= eps * std::abs(z[k])) done[k] = true;
      }
      if (all) break;
    }
    // Newton polish: a few steps, keep only improvements.
    for (auto& r : z) {
      for (int s = 0; s < 3; ++s) {
        const auto h = horner(q, r);
        if (h.dp == 0.0) break;
        const C next = r - h.p / h.dp;
        if (std::abs(horner(q, next).p) < std::abs(h.p))
          r = next;
        else
          break;
      }
    }
    out.insert(out.end(), z.begin(), z.end());
  }

  std::vector<Cx> result;
  std::vector<double> residuals;
  bool ok = true;
  const double eps = std::numeric_limits<double>::epsilon();
  for (const auto& r : out) {
    const auto h = horner(c, r);
    const double res = std::abs(h.p);
    residuals.push_back(res);
    const double bound = std::max(tol * (1.0 + cmax), 64.0 * eps * h.bound);
    if (!(res <= bound)) ok = false;
  }
  if (!ok) throw RootConvergenceError("roots: iteration did not converge", residuals);
  for (const auto& r : out) result.emplace_back(r);
  std::sort(result.begin(), result.end(), root_order_less);
  return result;
}

std::vector<Cx> univariate_coeffs(const MPoly& p, const std::string& var, const Assignment& at) {
  std::vector<Cx> out;
  for (const auto& c : p.coeffs(var)) out.push_back(c.eval(at));
  return out;
}

}  // namespace ivpp
