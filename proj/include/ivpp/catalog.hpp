#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ivpp/algebra/cx.hpp"
#include "ivpp/algebra/mpoly.hpp"
#include "ivpp/algebra/ratfunc.hpp"

namespace ivpp {

using ParamBindings = std::map<std::string, BigRational, std::less<>>;

/// How `apply` computes an image.
enum class SolveKind {
  kExplicit,       // evaluate the rational components
  kLotkaVolterra,  // solve the cyclic relations X_j (1 - X_{j-1}) = x_j (1 - x_{j+1})
  kEulerTop,       // solve the linear Hirota-Kimura system
};

/// Pole threshold used by apply and invariant evaluation:
/// |den| <= kPoleTol * (1 + |num|) is a pole.
inline constexpr double kPoleTol = 1e-12;

/// Immutable description of a catalog map: coordinates, bound parameters,
/// rational components and invariants.
///
/// `components` always holds the explicit rational form. For the implicit
/// families it is derived symbolically from the implicit relations and is
/// used by elimination; `apply` still solves the implicit relations.
class IntegrableMap {
 public:
  IntegrableMap(std::string name, std::vector<std::string> coords, ParamBindings params,
                std::vector<RatFunc> components, SolveKind solve,
                std::vector<std::string> invariant_names, std::vector<RatFunc> invariants);

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return coords_.size(); }
  const std::vector<std::string>& coords() const noexcept { return coords_; }
  const ParamBindings& params() const noexcept { return params_; }
  const std::vector<RatFunc>& components() const noexcept { return components_; }
  SolveKind solve_kind() const noexcept { return solve_; }
  const std::vector<std::string>& invariant_names() const noexcept { return invariant_names_; }
  const std::vector<RatFunc>& invariants() const noexcept { return invariants_; }

  Assignment assignment(const PointC& p) const;

  struct Compiled;
  const Compiled& compiled() const noexcept { return *compiled_; }

 private:
  std::string name_;
  std::vector<std::string> coords_;
  ParamBindings params_;
  std::vector<RatFunc> components_;
  SolveKind solve_;
  std::vector<std::string> invariant_names_;
  std::vector<RatFunc> invariants_;
  std::shared_ptr<const Compiled> compiled_;
};

/// Names accepted by catalog_get.
const std::vector<std::string>& catalog_names();

/// Parameter slots of a catalog map, in declaration order; alternatives
/// (such as the Euler top's moments I, J, K) are not listed.
std::vector<std::string> catalog_parameters(const std::string& name);

/// Builds a catalog map. Every printed invariant is checked for exact
/// conservation at rational points before returning.
///
/// Parameters: lyness2 {a}; moebius2d {a, b}; euler {alpha, beta, gamma}
/// or moments {I, J, K}; qrt {a1..f1, a2..f2} for q' and q''.
IntegrableMap catalog_get(const std::string& name, const ParamBindings& params = {});

/// One step of the map. Throws PoleError, SingularSystemError or
/// BranchSelectionError.
PointC apply(const IntegrableMap& m, const PointC& p);

/// Evaluates the rational components directly.
PointC apply_explicit(const IntegrableMap& m, const PointC& p);

std::vector<Cx> invariants_eval(const IntegrableMap& m, const PointC& p);

/// Exact image at a rational point (explicit components).
std::vector<BigRational> apply_exact(const IntegrableMap& m, const std::vector<BigRational>& p);
std::vector<BigRational> invariants_exact(const IntegrableMap& m,
                                          const std::vector<BigRational>& p);

/// Checks H(f(x)) == H(x) exactly at `points` seeded rational points.
/// Returns the largest index of a failing invariant + 1, or 0 when all hold.
std::size_t check_invariants_exact(const IntegrableMap& m, int points, std::uint64_t seed);

// Lotka-Volterra helpers -------------------------------------------------------

/// Cyclic coordinate names for dimension d: x, y, z, u, v, w, ...
std::vector<std::string> lv_coordinate_names(std::size_t d);

/// Explicit rational LV map of dimension d, obtained by dividing the trivial
/// root X_j = 1 - x_{j+1} out of the consistency quadratic.
std::vector<RatFunc> lv_explicit_components(std::size_t d);

/// Invariants H_1..H_[d/2] and r of the d-dimensional LV map.
std::vector<RatFunc> lv_invariants(std::size_t d);

/// Generic numeric LV step for any d >= 3, solving the cyclic relations.
/// When `invariants` are given, the root conserving them is selected.
PointC lv_cyclic_step(const PointC& x, const std::vector<RatFunc>& invariants,
                      const std::vector<std::string>& coords);

}  // namespace ivpp
