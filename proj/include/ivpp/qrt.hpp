#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include "ivpp/biquad.hpp"
#include "ivpp/catalog.hpp"
#include "ivpp/recurrence.hpp"

namespace ivpp {

/// Symmetric QRT parameters q' and q''.
struct QRTParams {
  BiquadParams qp, qpp;
};

/// Bindings a1..f1, a2..f2 for catalog_get("qrt", ...).
ParamBindings qrt_bindings(const QRTParams& P);

/// One step (x, y) -> (y, Y). Throws PoleError.
std::pair<Cx, Cx> qrt_apply(const QRTParams& P, const Cx& x, const Cx& y);

/// H(x, y) = -S_q'(y, x) / S_q''(y, x). Throws PoleError.
Cx qrt_invariant(const QRTParams& P, const Cx& x, const Cx& y);

/// q' + h q''.
BiquadParamsC reduce_to_biquadratic(const QRTParams& P, const Cx& h);
BiquadParams reduce_to_biquadratic(const QRTParams& P, const BigRational& h);

/// Numerator of gamma^(n)(q' + H(x, X) q'') cleared by the denominator of H
/// raised to deg_h gamma^(n)(q' + h q''); n in {3, 4, 5}. Throws
/// DegenerateParametersError when the result vanishes identically.
RecurrenceRelation qrt_recurrence(const QRTParams& P, int n);

/// The same construction with polynomial parameter entries.
MPoly qrt_recurrence_poly(const std::array<MPoly, 6>& qp, const std::array<MPoly, 6>& qpp, int n);

/// Seeded random QRT parameters with entries num/den, |num| <= 4, den <= 3,
/// redrawn until both maps are non-degenerate.
QRTParams draw_qrt_params(std::uint64_t seed);

/// A point of exact period n: h is the first root (canonical order) of
/// gamma^(n)(q' + h q'') = 0, x comes from the k/8 grid and y is the first
/// root of S_{q'+hq''}(y, x) = 0, so H(x, y) = h. Candidates whose first
/// n iterates hit a pole or exceed 1e6 in modulus are passed over, so points
/// near the fiber's points at infinity are not returned.
struct QRTSample {
  Cx h, x, y;
};
QRTSample sample_qrt_on_gamma(const QRTParams& P, int n, std::uint64_t seed);

}  // namespace ivpp
