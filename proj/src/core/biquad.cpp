#include "ivpp/biquad.hpp"

#include <algorithm>

#include "ivpp/algebra/polyops.hpp"
#include "ivpp/algebra/roots.hpp"
#include "ivpp/errors.hpp"
#include "ivpp/seeding.hpp"
#include "ivpp/varieties.hpp"

namespace ivpp {

BiquadParamsC to_complex(const BiquadParams& q) {
  BiquadParamsC out;
  for (std::size_t i = 0; i < 6; ++i) out[i] = Cx(q[i].to_double());
  return out;
}

MPoly biquad_S(const std::array<MPoly, 6>& q, const std::string& X, const std::string& x) {
  const MPoly Xv = MPoly::variable(X), xv = MPoly::variable(x);
  return q[0] * Xv * Xv * xv * xv + q[1] * (Xv + xv) * Xv * xv + q[2] * (Xv - xv).pow(2) +
         q[3] * Xv * xv + q[4] * (Xv + xv) + q[5];
}

MPoly biquad_S(const BiquadParams& q, const std::string& X, const std::string& x) {
  std::array<MPoly, 6> p;
  for (std::size_t i = 0; i < 6; ++i) p[i] = MPoly(q[i]);
  return biquad_S(p, X, x);
}

Cx biquad_S(const BiquadParamsC& q, const Cx& X, const Cx& x) {
  const auto [xi, eta, rho] = biquad_xi_eta_rho(q, x);
  return xi * X * X + eta * X + rho;
}

std::array<Cx, 3> biquad_xi_eta_rho(const BiquadParamsC& q, const Cx& x) {
  const auto& [a, b, c, d, e, f] = q;
  return {a * x * x + b * x + c, b * x * x + (d - Cx(2.0) * c) * x + e, c * x * x + e * x + f};
}

std::vector<Cx> solve_branches(const BiquadParamsC& q, const Cx& x) {
  const auto [xi, eta, rho] = biquad_xi_eta_rho(q, x);
  const double scale = 1.0 + std::max({xi.abs(), eta.abs(), rho.abs()});
  std::vector<Cx> coeffs = {rho, eta, xi};
  while (coeffs.size() > 1 && coeffs.back().abs() <= 1e-14 * scale) coeffs.pop_back();
  if (coeffs.size() == 1) throw DegreeError("biquadratic is constant in X at this x");
  return roots(coeffs, 0.0);
}

BiquadParams compose(const BiquadParams& q) {
  const MPoly first = biquad_S(q, "y", "x");
  const MPoly second = biquad_S(q, "X", "y");
  if (first.degree("y") <= 0 || second.degree("y") <= 0)
    throw DegenerateFamilyError("compose: biquadratic does not involve both arguments");
  MPoly r = resultant(second, first, "y");
  if (r.is_zero()) throw DegenerateFamilyError("compose: resultant vanishes identically");
  r = strip_factor(r, MPoly::parse("X - x")).primitive();
  if (r.degree("X") <= 0 || r.degree("x") <= 0)
    throw DegenerateFamilyError("compose: no non-backtracking factor remains (" + r.str() + ")");
  // Read back a..f from the coefficients of X^2 x^2, X^2 x, X^2, X x, X, 1.
  auto co = [&](std::uint32_t i, std::uint32_t j) {
    return r.coeff("X", static_cast<int>(i)).coeff("x", static_cast<int>(j)).constant_value();
  };
  BiquadParams out = {co(2, 2), co(2, 1), co(2, 0), co(1, 1) + BigRational(2) * co(2, 0),
                      co(1, 0), co(0, 0)};
  if (!(biquad_S(out) == r))
    throw DegenerateFamilyError("compose: two-step factor is not a symmetric biquadratic: " + r.str());
  return out;
}

BigRational gamma_biquad(int n, const BiquadParams& q) {
  ExactAssignment at;
  for (std::size_t i = 0; i < 6; ++i) at.emplace(kBiquadSymbols[i], q[i]);
  return biquad_gamma(n).eval_exact(at);
}

Cx gamma_biquad(int n, const BiquadParamsC& q) {
  Assignment at;
  for (std::size_t i = 0; i < 6; ++i) at.emplace(kBiquadSymbols[i], q[i]);
  return biquad_gamma(n).eval(at);
}

MPoly gamma_biquad(int n, const std::array<MPoly, 6>& q) {
  std::map<std::string, MPoly, std::less<>> at;
  for (std::size_t i = 0; i < 6; ++i) at.emplace(kBiquadSymbols[i], q[i]);
  return biquad_gamma(n).substitute(at);
}

std::array<MPoly, 6> from_3dlv_symbolic() {
  return {MPoly::parse("r + 1"),
          MPoly::parse("s - 2*r - 1"),
          MPoly::parse("r - s"),
          MPoly::parse("s^2 + r*s + 5*r - 2*s + 1"),
          MPoly::parse("-r*(s + 1)"),
          MPoly(0)};
}

BiquadParams from_3dlv(const BigRational& r, const BigRational& s) {
  const ExactAssignment at{{"r", r}, {"s", s}};
  BiquadParams out;
  const auto sym = from_3dlv_symbolic();
  for (std::size_t i = 0; i < 6; ++i) out[i] = sym[i].eval_exact(at);
  return out;
}

std::vector<Cx> follow_branch(const BiquadParamsC& q, const Cx& x0, const Cx& X1, int steps) {
  std::vector<Cx> out{x0, X1};
  for (int k = 1; k < steps; ++k) {
    const Cx prev = out[out.size() - 2];
    const auto rts = solve_branches(q, out.back());
    if (rts.size() == 1) {
      out.push_back(rts[0]);
      continue;
    }
    const double d0 = (rts[0] - prev).abs(), d1 = (rts[1] - prev).abs();
    if (std::abs(d0 - d1) <= 1e-12 * (1.0 + d0 + d1))
      throw BranchSelectionError("branches equidistant from the previous point");
    out.push_back(d0 > d1 ? rts[0] : rts[1]);
  }
  return out;
}

BiquadSample sample_biquad_on_gamma(int n, std::uint64_t seed) {
  const MPoly& gamma = biquad_gamma(n);
  SplitMix64 rng(seed);
  for (int attempt = 0; attempt < 32; ++attempt) {
    Assignment at;
    for (std::size_t i = 0; i < 5; ++i) at.emplace(kBiquadSymbols[i], draw_grid(rng).value());
    const Cx x0 = draw_grid(rng).value();
    std::vector<Cx> rts;
    try {
      rts = roots(univariate_coeffs(gamma, "f", at), 0.0);
    } catch (const Error&) {
      continue;
    }
    BiquadSample s;
    for (std::size_t i = 0; i < 5; ++i) s.q[i] = at.at(kBiquadSymbols[i]);
    s.q[5] = rts.front();
    s.x0 = x0;
    return s;
  }
  throw SamplingError("no biquadratic parameters on gamma^(" + std::to_string(n) + ") after 32 draws");
}

}  // namespace ivpp
