#pragma once

#include <utility>
#include <vector>

#include "ivpp/algebra/cx.hpp"
#include "ivpp/algebra/ratfunc.hpp"
#include "ivpp/recurrence.hpp"

namespace ivpp {

/// X = h (x + a) / (1 + b x). Entries are rational functions of the symbols
/// a, b, h, or constants.
struct MoebiusParams {
  RatFunc a, b, h;
};
using MoebiusState = MoebiusParams;

/// The symbolic base (a, b, h).
MoebiusParams moebius_symbols();

/// Parameters of f^(n+1) from those of f^(n) and of f.
/// Throws DegenerateFamilyError when a denominator vanishes identically.
MoebiusState param_step(const MoebiusParams& base, const MoebiusState& s);

/// State after n - 1 steps from `base`, i.e. the parameters of f^n.
MoebiusState param_power(const MoebiusParams& base, int n);

/// Generator of the period-n variety, 2 <= n <= 8, derived from
/// (a^(n+1), b^(n+1), h^(n+1)) = (a, b, h): the common factor of the three
/// numerators with the a*b = 1 factor, monomials and lower periods removed.
/// Normalized to integer coefficients with positive constant term.
MPoly derive_gamma(int n);

/// F(x, X): numerator of gamma^(n)(a, b, H) with H = X (1 + b x) / (x + a),
/// symbolic in a and b.
RecurrenceRelation recurrence_F(int n);

/// recurrence_F with a and b bound. Throws DegenerateParametersError when
/// a b = 1.
RecurrenceRelation recurrence_F(int n, const BigRational& a, const BigRational& b);

/// mu_+ and mu_- = (1 + ab +- sqrt((3 + ab)(ab - 1))) / 2.
std::pair<Cx, Cx> moebius_mu(const Cx& a, const Cx& b);

/// Period-3 route of f(x) = -mu (x + a)/(1 + b x): returns [x, f(x), f^2(x),
/// f^3(x)] with f^2(x) = -(x + a mu)/(mu + b x) in closed form.
std::vector<Cx> moebius_route3(const Cx& a, const Cx& b, const Cx& x, bool plus);

/// Follows roots of F(x_k, X) for `steps` steps starting from x0 -> X1,
/// at each step taking the root that keeps H(x, X) = X (1 + b x)/(x + a)
/// equal to its first value; a root within 1e-6 of that level-set point is
/// replaced by it. Returns [x0, X1, ..., X_steps].
std::vector<Cx> follow_moebius(const RecurrenceRelation& F, const Cx& a, const Cx& b,
                               const Cx& x0, const Cx& X1, int steps);

}  // namespace ivpp
