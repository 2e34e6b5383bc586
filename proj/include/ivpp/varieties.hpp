#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ivpp/algebra/cx.hpp"
#include "ivpp/algebra/mpoly.hpp"
#include "ivpp/algebra/ratfunc.hpp"
#include "ivpp/catalog.hpp"

namespace ivpp {

using Substitution = std::map<std::string, RatFunc, std::less<>>;

/// Generators gamma_1..gamma_l of the invariant variety of period n.
///
/// `gammas` are polynomials in invariant symbols; `substitution` maps each
/// symbol to a rational function of the owning map's coordinates. When the
/// generator was fetched without map parameters, parameters stay symbolic
/// and `substitution` is empty.
struct VarietyGenerator {
  std::string map_name;
  int period = 0;
  std::vector<MPoly> gammas;
  Substitution substitution;
  std::vector<std::string> coords;
  /// Coordinates the sampler solves for, one per generator.
  std::vector<std::string> solve_for;
  /// Coordinates removed when deriving recurrence equations.
  std::vector<std::string> eliminate;

  bool bound() const noexcept { return !substitution.empty(); }

  /// Numerators of gamma_alpha(H(x)) with the invariant denominators cleared
  /// to the minimal power; integer coefficients with content 1.
  std::vector<MPoly> composed_numerators() const;

  /// gamma_alpha evaluated at the invariant values of p.
  std::vector<Cx> eval(const PointC& p) const;
};

struct Membership {
  bool member = false;
  std::vector<double> residuals;  // |gamma_alpha(H(p))| / (1 + scale_alpha)
};

/// Periods available for a map (or for the "biquad" family).
std::vector<int> gamma_periods(const std::string& map_name);

/// Symbolic generator as stored in the catalog. Bound to the map's
/// invariants when the map takes no parameters.
VarietyGenerator gamma_get(const std::string& map_name, int period);

/// Generator bound to a concrete map: parameters substituted, invariants
/// attached.
VarietyGenerator gamma_get(const IntegrableMap& m, int period);

/// Printed biquadratic generator gamma^(n)(a, b, c, d, e, f), n in {3, 4, 5}.
const MPoly& biquad_gamma(int period);

/// Residuals are relative to the magnitude sum of the generator's terms at
/// the invariant values, so large invariants do not inflate the verdict.
Membership membership(const VarietyGenerator& g, const PointC& p, double tol);

/// Seeded point on the variety. Free coordinates come from the k/8 complex
/// grid; the remaining ones are solved in `solve_for` order, taking the
/// first admissible root in canonical root order.
PointC sample_on_variety(const VarietyGenerator& g, std::uint64_t seed);

/// Checksums recorded for the bulkiest transcriptions; each entry evaluates
/// the stored polynomial at fixed rational points.
struct ChecksumResult {
  std::string label;
  int mismatches = 0;
  int points = 0;
};
std::vector<ChecksumResult> verify_transcription_checksums();

/// Generator strings keyed by (map, period), as written to the catalog.
std::string varieties_catalog_json();

}  // namespace ivpp
