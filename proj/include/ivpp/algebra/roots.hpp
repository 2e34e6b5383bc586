#pragma once

#include <string>
#include <vector>

#include "ivpp/algebra/cx.hpp"
#include "ivpp/algebra/mpoly.hpp"

namespace ivpp {

inline constexpr double kDefaultTol = 1e-9;

/// All complex roots, with multiplicity, of sum_k coeffs[k] z^k.
///
/// Aberth-Ehrlich simultaneous iteration followed by Newton polishing. The
/// result is sorted lexicographically by (re, im) rounded to 1e-12, so the
/// output is a deterministic function of the input. Each root satisfies
/// |p(r)| <= tol * (1 + max|c_k|), relaxed to the floating-point evaluation
/// error bound of p at r when that is larger.
///
/// Throws DegreeError when the degree is 0 or the leading coefficient is
/// not larger than tol in magnitude, RootConvergenceError when the
/// residual bound is not met.
std::vector<Cx> roots(const std::vector<Cx>& coeffs, double tol = kDefaultTol);

/// Coefficients (ascending) of p viewed as a polynomial in `var` with every
/// other variable bound by `at`.
std::vector<Cx> univariate_coeffs(const MPoly& p, const std::string& var, const Assignment& at);

/// Canonical ordering used for root selection.
bool root_order_less(const Cx& a, const Cx& b);

}  // namespace ivpp
