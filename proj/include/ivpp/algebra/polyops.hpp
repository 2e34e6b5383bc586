#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ivpp/algebra/mpoly.hpp"

namespace ivpp {

/// Quotient p / f when f divides p over the rationals, std::nullopt otherwise.
std::optional<MPoly> try_divide(const MPoly& p, const MPoly& f);

/// q with q * f == p; throws InexactDivisionError carrying the remainder.
MPoly exact_divide(const MPoly& p, const MPoly& f);

/// Divides out f as many times as it divides p. `count` receives the number.
MPoly strip_factor(const MPoly& p, const MPoly& f, int* count = nullptr);

/// lc(q)^(deg p - deg q + 1) * p  mod q, viewing both as polynomials in var.
MPoly pseudo_remainder(const MPoly& p, const MPoly& q, const std::string& var);

/// gcd of the coefficients of p in var (primitive, positive leading coeff).
MPoly content_in(const MPoly& p, const std::string& var);

/// Greatest common divisor over Q, normalized by MPoly::primitive(). The gcd
/// of two zero polynomials is zero; if one argument is a nonzero constant
/// the result is 1.
MPoly gcd(const MPoly& p, const MPoly& q);

/// p ≡ q iff p * lc(q) == q * lc(p) in the global graded-lex order.
bool equal_up_to_scale(const MPoly& p, const MPoly& q);

using PolyMatrix = std::vector<std::vector<MPoly>>;

/// Sylvester matrix in var: deg_var(q) rows of p coefficients (highest power
/// first) followed by deg_var(p) rows of q coefficients.
PolyMatrix sylvester_matrix(const MPoly& p, const MPoly& q, const std::string& var);

/// Fraction-free (Bareiss) determinant.
MPoly determinant(PolyMatrix m);

/// Res(p, q, var) = det of the Sylvester matrix. Throws
/// NothingToEliminateError if either input has degree 0 in var.
MPoly resultant(const MPoly& p, const MPoly& q, const std::string& var);

}  // namespace ivpp
