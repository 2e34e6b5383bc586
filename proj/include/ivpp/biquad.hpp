#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ivpp/algebra/cx.hpp"
#include "ivpp/algebra/mpoly.hpp"
#include "ivpp/algebra/rational.hpp"

namespace ivpp {

/// q = (a, b, c, d, e, f) of
/// S_q(X, x) = a X^2 x^2 + b (X + x) X x + c (X - x)^2 + d X x + e (X + x) + f.
using BiquadParams = std::array<BigRational, 6>;
using BiquadParamsC = std::array<Cx, 6>;

inline constexpr std::array<const char*, 6> kBiquadSymbols = {"a", "b", "c", "d", "e", "f"};

BiquadParamsC to_complex(const BiquadParams& q);

/// S_q as a polynomial in the two named variables.
MPoly biquad_S(const BiquadParams& q, const std::string& X = "X", const std::string& x = "x");
/// S_q with polynomial coefficients (for symbolic parameters).
MPoly biquad_S(const std::array<MPoly, 6>& q, const std::string& X, const std::string& x);
Cx biquad_S(const BiquadParamsC& q, const Cx& X, const Cx& x);

/// (xi(x), eta(x), rho(x)): coefficients of X^2, X, 1 in S_q(X, x).
std::array<Cx, 3> biquad_xi_eta_rho(const BiquadParamsC& q, const Cx& x);

/// Roots in X of S_q(X, x) = 0, in canonical root order (one root when the
/// X^2 coefficient vanishes). Throws DegreeError if S_q(., x) is constant.
std::vector<Cx> solve_branches(const BiquadParamsC& q, const Cx& x);

/// Parameters of the two-step correspondence: Res_y(S_q(X2, y), S_q(y, x))
/// with the backtracking factor X2 - x divided out exactly, read back in the
/// six-parameter form and made primitive. Throws DegenerateFamilyError when
/// nothing non-backtracking remains or the remainder is not of that form.
BiquadParams compose(const BiquadParams& q);

/// The printed generators, n in {3, 4, 5}.
BigRational gamma_biquad(int n, const BiquadParams& q);
Cx gamma_biquad(int n, const BiquadParamsC& q);
/// gamma^(n) with each parameter replaced by a polynomial.
MPoly gamma_biquad(int n, const std::array<MPoly, 6>& q);

/// The 3d Lotka-Volterra identification in terms of the invariants r, s.
BiquadParams from_3dlv(const BigRational& r, const BigRational& s);
std::array<MPoly, 6> from_3dlv_symbolic();

/// [x0, X1, ..., X_steps]: X1 given, then at each step the root of
/// S_q(., x_k) farthest from x_{k-1}. Throws BranchSelectionError when the
/// two roots are equidistant within 1e-12.
std::vector<Cx> follow_branch(const BiquadParamsC& q, const Cx& x0, const Cx& X1, int steps);

/// A seeded q on gamma^(n) = 0: a..e from the k/8 grid, f solved (first
/// root in canonical order), and x0 from the grid.
struct BiquadSample {
  BiquadParamsC q;
  Cx x0;
};
BiquadSample sample_biquad_on_gamma(int n, std::uint64_t seed);

}  // namespace ivpp
