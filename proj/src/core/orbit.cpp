#include "ivpp/orbit.hpp"

#include <algorithm>

#include "ivpp/errors.hpp"
#include "ivpp/seeding.hpp"

namespace ivpp {

std::vector<PointC> iterate(const IntegrableMap& m, const PointC& p0, int n) {
  if (n < 0) throw ArityError("iterate: negative step count");
  std::vector<PointC> out{p0};
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 1; k <= n; ++k) {
    try {
      out.push_back(ivpp::apply(m, out.back()));
    } catch (const PoleError& e) {
      throw PoleError(std::string(e.what()) + " at step " + std::to_string(k),
                      static_cast<std::size_t>(k));
    }
  }
  return out;
}

OrbitReport verify_period(const IntegrableMap& m, const PointC& p0, int n, double tol) {
  if (n < 2) throw ArityError("verify_period: period must be at least 2");
  OrbitReport r;
  r.points = iterate(m, p0, n);
  r.return_error = relative_distance(p0, r.points.back());
  r.fixed_point = relative_distance(p0, r.points[1]) <= tol;
  bool early = false;
  for (int d = 2; d < n; ++d)
    if (n % d == 0 && relative_distance(p0, r.points[static_cast<std::size_t>(d)]) <= tol)
      early = true;
  r.primitive = r.return_error <= tol && !early && !r.fixed_point;
  if (!m.invariants().empty()) {
    const auto h0 = invariants_eval(m, p0);
    for (std::size_t k = 1; k < r.points.size(); ++k) {
      const auto h = invariants_eval(m, r.points[k]);
      for (std::size_t i = 0; i < h.size(); ++i)
        r.drift = std::max(r.drift, (h[i] - h0[i]).abs() / (1.0 + h0[i].abs()));
    }
  }
  return r;
}

double conservation(const IntegrableMap& m, const PointC& p0, int n) {
  if (n <= 0 || m.invariants().empty()) return 0.0;
  const auto pts = iterate(m, p0, n);
  const auto h0 = invariants_eval(m, p0);
  double drift = 0.0;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    const auto h = invariants_eval(m, pts[k]);
    for (std::size_t i = 0; i < h.size(); ++i)
      drift = std::max(drift, (h[i] - h0[i]).abs() / (1.0 + h0[i].abs()));
  }
  return drift;
}

ExclusivityScan exclusivity_scan(const IntegrableMap& m, const PointC& p0, int n_max, double tol) {
  ExclusivityScan out;
  out.returned.assign(static_cast<std::size_t>(std::max(0, n_max - 1)), false);
  SplitMix64 rng(0x0ff5ca9);
  PointC start = p0;
  for (int restart = 0; restart < 8; ++restart) {
    try {
      const auto pts = iterate(m, start, n_max);
      for (int n = 2; n <= n_max; ++n)
        out.returned[static_cast<std::size_t>(n - 2)] =
            relative_distance(start, pts[static_cast<std::size_t>(n)]) <= tol;
      return out;
    } catch (const PoleError&) {
      ++out.poles;
      for (auto& c : start) c = c + draw_complex(rng, 1e-6) * Cx(1.0 + c.abs());
    }
  }
  return out;
}

}  // namespace ivpp
