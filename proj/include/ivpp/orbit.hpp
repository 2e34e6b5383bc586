#pragma once

#include <optional>
#include <vector>

#include "ivpp/algebra/cx.hpp"
#include "ivpp/catalog.hpp"

namespace ivpp {

struct OrbitReport {
  std::vector<PointC> points;  // p0 .. pn
  double return_error = 0.0;   // max_j |p0_j - pn_j| / (1 + |p0_j|)
  double drift = 0.0;          // max relative invariant deviation along the orbit
  bool primitive = false;      // returns at n and at no proper divisor d >= 2
  bool fixed_point = false;    // p1 ~ p0
  bool passed(double tol) const noexcept { return return_error <= tol && !fixed_point; }
};

/// [p0, f(p0), ..., f^n(p0)]. Throws PoleError carrying the failing step.
std::vector<PointC> iterate(const IntegrableMap& m, const PointC& p0, int n);

OrbitReport verify_period(const IntegrableMap& m, const PointC& p0, int n, double tol);

/// Max over steps 1..n and invariants of |H_i(p_k) - H_i(p0)| / (1 + |H_i(p0)|).
double conservation(const IntegrableMap& m, const PointC& p0, int n);

struct ExclusivityScan {
  std::vector<bool> returned;  // index k <-> period k + 2
  int poles = 0;               // pole restarts
};

/// For n = 2..n_max, whether the orbit from p0 came back within tol after n
/// steps. A pole restarts the scan from a small seeded perturbation of p0.
ExclusivityScan exclusivity_scan(const IntegrableMap& m, const PointC& p0, int n_max, double tol);

}  // namespace ivpp
