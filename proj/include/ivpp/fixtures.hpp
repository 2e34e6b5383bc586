#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ivpp/algebra/mpoly.hpp"
#include "ivpp/algebra/ratfunc.hpp"
#include "ivpp/catalog.hpp"

namespace ivpp {

/// An algebraic auxiliary: `symbol` ranges over the roots of `poly`, whose
/// coefficients may involve coordinates and earlier auxiliaries.
struct AuxSymbol {
  std::string symbol;
  MPoly poly;
};

/// A printed recurrence polynomial F(x, X) for one coordinate of a map.
/// Printed parameter symbols are already substituted.
struct RecurrenceFixture {
  std::string label;
  std::string map_name;
  ParamBindings params;
  int period = 0;
  std::string target;
  MPoly F;
  MPoly printed;  // F with parameter symbols left free
  std::vector<AuxSymbol> aux;
  bool derive = false;

  IntegrableMap map() const { return catalog_get(map_name, params); }
};

/// Printed explicit routes: each route lists the reduced state after steps
/// 1..n-1, one rational function per reduced coordinate; step n returns.
struct RouteFixture {
  using State = std::vector<RatFunc>;
  std::string label;
  std::string map_name;
  ParamBindings params;
  int period = 0;
  std::vector<std::string> coords;
  std::vector<AuxSymbol> aux;
  std::vector<std::vector<State>> routes;
  bool reversed = false;  // routes traverse the cycle in opposite directions
  bool exact = false;     // free of auxiliaries; checked in exact arithmetic
  /// Set on corrected readings of a printed fixture: the label of the
  /// printed entry and what was changed.
  std::string erratum_of;
  std::string erratum;

  IntegrableMap map() const { return catalog_get(map_name, params); }
};

/// Fixtures shipped in data/fixtures.json.
const std::vector<RecurrenceFixture>& recurrence_fixtures();
const std::vector<RouteFixture>& route_fixtures();
const RecurrenceFixture& recurrence_fixture(const std::string& label);
const RouteFixture& route_fixture(const std::string& label);

struct FixtureVerdict {
  std::string label;
  int samples = 0;            // on-variety points tried
  int passed = 0;             // points where the behavioral check held
  int skipped = 0;            // points lost to poles or degenerate roots
  double max_residual = 0.0;  // worst best-branch distance over passed points
  std::optional<bool> derived;  // derived polynomial agrees (recurrences)
  std::optional<bool> exact;    // exact cycle at rational points (routes)
  std::string note;

  bool behavioral() const noexcept { return samples > 0 && passed + skipped == samples && passed > 0; }
  bool ok() const noexcept {
    return behavioral() && derived.value_or(true) && exact.value_or(true);
  }
};

/// Behavioral check: at on-variety points p, for some branch of the
/// auxiliaries every root of F(p, .) is the target coordinate of f(p) or of
/// another orbit point, and f(p) is among the roots. With `derive`, the
/// polynomial from `eliminate` must equal F up to scale (for F with
/// auxiliaries, its norm over them).
FixtureVerdict check_fixture(const RecurrenceFixture& fix, double tol, int samples = 20,
                             std::uint64_t seed = 1);

/// Behavioral check: for some branch of the auxiliaries each route follows
/// the true orbit forward or backward, and with `reversed` both directions
/// occur. With `exact`, the first step is iterated exactly at `exact_points`
/// rational points and must reproduce the printed steps and return.
FixtureVerdict check_routes(const RouteFixture& fix, double tol, int samples = 20,
                            std::uint64_t seed = 1, int exact_points = 20);

/// Exact check alone over `points` usable rational points: `failures`
/// counts points where the first step iterated n times does not return,
/// `step_mismatches` those where an iterate differs from a printed later
/// step. `first_mismatch` names the first differing entry.
struct ExactCycleResult {
  int points = 0;
  int failures = 0;
  int step_mismatches = 0;
  std::string first_mismatch;
};
ExactCycleResult check_route_exact(const RouteFixture& fix, int points, std::uint64_t seed);

/// F with every auxiliary eliminated by resultants (F itself without them).
MPoly fixture_norm(const RecurrenceFixture& fix);

/// Comparison of derived factors against one applicable fixture.
struct FixtureDiff {
  std::string label;
  std::string expected;  // fixture polynomial at the map's parameters
  bool match = false;
};

/// Fixtures for (map, period, target) that can be evaluated at the map's
/// parameters, each compared up to scale with `factors`. Fixtures without
/// auxiliaries have the map's parameters substituted into the printed
/// polynomial; those with auxiliaries apply only at their own parameters.
std::vector<FixtureDiff> compare_with_fixtures(const IntegrableMap& m, int period,
                                               const std::string& target,
                                               const std::vector<MPoly>& factors);

}  // namespace ivpp
