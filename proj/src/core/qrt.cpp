#include "ivpp/qrt.hpp"

#include "ivpp/algebra/polyops.hpp"
#include "ivpp/algebra/roots.hpp"
#include "ivpp/errors.hpp"
#include "ivpp/seeding.hpp"

#include <tuple>

namespace ivpp {

ParamBindings qrt_bindings(const QRTParams& P) {
  ParamBindings out;
  for (std::size_t i = 0; i < 6; ++i) {
    out.emplace(std::string(kBiquadSymbols[i]) + "1", P.qp[i]);
    out.emplace(std::string(kBiquadSymbols[i]) + "2", P.qpp[i]);
  }
  return out;
}

namespace {

Cx divide_checked(const Cx& n, const Cx& d, const char* what) {
  if (d.abs() <= kPoleTol * (1.0 + n.abs())) throw PoleError(what);
  return n / d;
}

}  // namespace

std::pair<Cx, Cx> qrt_apply(const QRTParams& P, const Cx& x, const Cx& y) {
  const auto [xi1, eta1, rho1] = biquad_xi_eta_rho(to_complex(P.qp), y);
  const auto [xi2, eta2, rho2] = biquad_xi_eta_rho(to_complex(P.qpp), y);
  const Cx num = eta1 * rho2 - rho1 * eta2 - x * (rho1 * xi2 - xi1 * rho2);
  const Cx den = rho1 * xi2 - xi1 * rho2 - x * (xi1 * eta2 - eta1 * xi2);
  return {y, divide_checked(num, den, "pole in qrt_apply")};
}

Cx qrt_invariant(const QRTParams& P, const Cx& x, const Cx& y) {
  const Cx n = biquad_S(to_complex(P.qp), y, x);
  const Cx d = biquad_S(to_complex(P.qpp), y, x);
  return -divide_checked(n, d, "pole in qrt_invariant");
}

BiquadParamsC reduce_to_biquadratic(const QRTParams& P, const Cx& h) {
  BiquadParamsC out;
  for (std::size_t i = 0; i < 6; ++i) out[i] = Cx(P.qp[i].to_double()) + h * Cx(P.qpp[i].to_double());
  return out;
}

BiquadParams reduce_to_biquadratic(const QRTParams& P, const BigRational& h) {
  BiquadParams out;
  for (std::size_t i = 0; i < 6; ++i) out[i] = P.qp[i] + h * P.qpp[i];
  return out;
}

MPoly qrt_recurrence_poly(const std::array<MPoly, 6>& qp, const std::array<MPoly, 6>& qpp, int n) {
  // G(h) = gamma(q' + h q'') = sum g_k h^k; H = -S'/S'' gives
  // F = sum g_k (-S')^k S''^(deg - k).
  std::array<MPoly, 6> line;
  const MPoly h = MPoly::variable("h");
  for (std::size_t i = 0; i < 6; ++i) line[i] = qp[i] + h * qpp[i];
  const MPoly G = gamma_biquad(n, line);
  const auto g = G.coeffs("h");
  const MPoly S1 = -biquad_S(qp, "X", "x");
  const MPoly S2 = biquad_S(qpp, "X", "x");
  const int deg = static_cast<int>(g.size()) - 1;
  MPoly F;
  for (int k = 0; k <= deg; ++k)
    F = F + g[static_cast<std::size_t>(k)] * S1.pow(static_cast<std::uint32_t>(k)) *
                S2.pow(static_cast<std::uint32_t>(deg - k));
  return F;
}

RecurrenceRelation qrt_recurrence(const QRTParams& P, int n) {
  std::array<MPoly, 6> qp, qpp;
  for (std::size_t i = 0; i < 6; ++i) {
    qp[i] = MPoly(P.qp[i]);
    qpp[i] = MPoly(P.qpp[i]);
  }
  const MPoly F = qrt_recurrence_poly(qp, qpp, n);
  if (F.is_zero() || F.is_constant())
    throw DegenerateParametersError("qrt: period-" + std::to_string(n) +
                                    " recurrence vanishes for these parameters");
  return {F.primitive(), n, "qrt"};
}

QRTParams draw_qrt_params(std::uint64_t seed) {
  SplitMix64 rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    QRTParams P;
    for (auto& v : P.qp) v = draw_rational(rng, 4, 3);
    for (auto& v : P.qpp) v = draw_rational(rng, 4, 3);
    try {
      catalog_get("qrt", qrt_bindings(P));
      return P;
    } catch (const Error&) {
    }
  }
  throw SamplingError("no non-degenerate QRT parameters after 64 draws");
}

namespace {

// True when the first n iterates stay finite and below 1e6 in modulus.
bool bounded_orbit(const QRTParams& P, Cx x, Cx y, int n) {
  constexpr double kBound = 1e6;
  if (x.abs() > kBound || y.abs() > kBound) return false;
  try {
    for (int k = 0; k < n; ++k) {
      std::tie(x, y) = qrt_apply(P, x, y);
      if (y.abs() > kBound) return false;
    }
  } catch (const Error&) {
    return false;
  }
  return true;
}

}  // namespace

QRTSample sample_qrt_on_gamma(const QRTParams& P, int n, std::uint64_t seed) {
  std::array<MPoly, 6> line;
  const MPoly h = MPoly::variable("h");
  for (std::size_t i = 0; i < 6; ++i) line[i] = MPoly(P.qp[i]) + h * MPoly(P.qpp[i]);
  const MPoly G = gamma_biquad(n, line);
  if (G.degree("h") < 1)
    throw DegenerateParametersError("qrt: gamma^(" + std::to_string(n) + ") is constant along q' + h q''");
  const auto hs = roots(univariate_coeffs(G, "h", {}), 0.0);
  SplitMix64 rng(seed);
  for (int attempt = 0; attempt < 32; ++attempt) {
    const Cx x = draw_grid(rng).value();
    for (const auto& hv : hs) {
      try {
        const auto ys = solve_branches(reduce_to_biquadratic(P, hv), x);
        for (const auto& y : ys)
          if ((qrt_invariant(P, x, y) - hv).abs() <= 1e-9 * (1.0 + hv.abs()) && bounded_orbit(P, x, y, n))
            return {hv, x, y};
      } catch (const Error&) {
      }
    }
  }
  throw SamplingError("qrt: no admissible point on gamma^(" + std::to_string(n) + ")");
}

}  // namespace ivpp
