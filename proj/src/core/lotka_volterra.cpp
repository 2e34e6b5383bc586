#include <algorithm>
#include <numeric>

#include "ivpp/algebra/polyops.hpp"
#include "ivpp/algebra/roots.hpp"
#include "ivpp/catalog.hpp"
#include "ivpp/errors.hpp"

namespace ivpp {

std::vector<std::string> lv_coordinate_names(std::size_t d) {
  static const std::vector<std::string> base = {"x", "y", "z", "u", "v", "w"};
  if (d <= base.size()) return {base.begin(), base.begin() + static_cast<std::ptrdiff_t>(d)};
  std::vector<std::string> out;
  for (std::size_t j = 1; j <= d; ++j) out.push_back("x" + std::to_string(j));
  return out;
}

std::vector<RatFunc> lv_explicit_components(std::size_t d) {
  if (d < 3) throw ArityError("Lotka-Volterra map needs d >= 3");
  const auto names = lv_coordinate_names(d);
  std::vector<MPoly> x;
  for (const auto& n : names) x.push_back(MPoly::variable(n));
  auto c = [&](std::size_t j) { return x[j % d] * (MPoly(1) - x[(j + 1) % d]); };
  const MPoly t = MPoly::variable("t_");
  // X_j = (A t + B) / (C t + D)
  MPoly A(1), B(0), C(0), D(1);
  for (std::size_t j = 1; j < d; ++j) {
    MPoly nA = c(j) * C, nB = c(j) * D, nC = C - A, nD = D - B;
    A = std::move(nA);
    B = std::move(nB);
    C = std::move(nC);
    D = std::move(nD);
  }
  const MPoly quad = (C - A) * t * t + (D - B - c(0) * C) * t - c(0) * D;
  const MPoly lin = exact_divide(quad, t - (MPoly(1) - x[1]));
  const RatFunc X0(-lin.coeff("t_", 0), lin.coeff("t_", 1));
  std::vector<RatFunc> out;
  for (std::size_t j = 0; j < d; ++j) {
    std::map<std::string, std::string, std::less<>> shift;
    for (std::size_t k = 0; k < d; ++k) shift[names[k]] = names[(k + j) % d];
    out.emplace_back(X0.num().rename(shift), X0.den().rename(shift));
  }
  return out;
}

std::vector<RatFunc> lv_invariants(std::size_t d) {
  const auto names = lv_coordinate_names(d);
  std::vector<MPoly> x;
  for (const auto& n : names) x.push_back(MPoly::variable(n));
  std::vector<RatFunc> out;
  for (std::size_t k = 1; k <= d / 2; ++k) {
    MPoly h;
    // Subsets of size k without cyclically adjacent members.
    std::vector<bool> pick(d, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    std::sort(pick.begin(), pick.end());
    do {
      bool ok = true;
      for (std::size_t j = 0; j < d && ok; ++j)
        if (pick[j] && pick[(j + 1) % d]) ok = false;
      if (!ok) continue;
      MPoly term(1);
      for (std::size_t j = 0; j < d; ++j)
        if (pick[j]) term *= x[j] * (MPoly(1) - x[(j + d - 1) % d]);
      h += term;
    } while (std::next_permutation(pick.begin(), pick.end()));
    out.emplace_back(h);
  }
  MPoly r(1);
  for (const auto& v : x) r *= v;
  out.emplace_back(r);
  return out;
}

PointC lv_cyclic_step(const PointC& x, const std::vector<RatFunc>& invariants,
                      const std::vector<std::string>& coords) {
  using C = std::complex<double>;
  const std::size_t d = x.size();
  auto c = [&](std::size_t j) { return x[j % d].value() * (1.0 - x[(j + 1) % d].value()); };
  C A = 1.0, B = 0.0, Cc = 0.0, D = 1.0;
  for (std::size_t j = 1; j < d; ++j) {
    const C nA = c(j) * Cc, nB = c(j) * D, nC = Cc - A, nD = D - B;
    A = nA;
    B = nB;
    Cc = nC;
    D = nD;
  }
  const C q2 = Cc - A, q1 = D - B - c(0) * Cc, q0 = -c(0) * D;
  std::vector<Cx> ts;
  const double scale = std::abs(q2) + std::abs(q1) + std::abs(q0);
  if (std::abs(q2) <= 1e-14 * scale) {
    if (std::abs(q1) <= 1e-14 * scale) throw SingularSystemError("LV consistency degenerate");
    ts.emplace_back(-q0 / q1);
  } else {
    ts = roots({Cx(q0), Cx(q1), Cx(q2)}, 0.0);
  }

  auto chain = [&](C t) {
    PointC X;
    X.emplace_back(t);
    for (std::size_t j = 1; j < d; ++j) {
      const C den = 1.0 - X.back().value();
      if (std::abs(den) <= kPoleTol * (1.0 + std::abs(c(j))))
        throw PoleError("LV chain pole");
      X.emplace_back(c(j) / den);
    }
    return X;
  };

  Assignment at_x;
  for (std::size_t j = 0; j < d; ++j) at_x[coords[j]] = x[j];
  std::vector<Cx> h0;
  for (const auto& h : invariants) h0.push_back(h.eval(at_x));

  const C trivial = 1.0 - x[1].value();
  struct Candidate {
    PointC X;
    double drift;
    double away;
  };
  std::vector<Candidate> cands;
  for (const auto& t : ts) {
    try {
      PointC X = chain(t.value());
      Assignment at_X;
      for (std::size_t j = 0; j < d; ++j) at_X[coords[j]] = X[j];
      double drift = 0.0;
      for (std::size_t i = 0; i < invariants.size(); ++i)
        drift = std::max(drift, (invariants[i].eval(at_X) - h0[i]).abs() / (1.0 + h0[i].abs()));
      cands.push_back({std::move(X), drift, std::abs(t.value() - trivial)});
    } catch (const PoleError&) {
    } catch (const NonFiniteError&) {
    }
  }
  if (cands.empty()) throw PoleError("LV step: every root hits a pole");
  constexpr double kConserve = 1e-6;
  std::vector<const Candidate*> good;
  for (const auto& cd : cands)
    if (invariants.empty() || cd.drift <= kConserve) good.push_back(&cd);
  if (good.empty())
    throw BranchSelectionError("LV step: no root of the consistency quadratic conserves the invariants");
  const Candidate* best = *std::max_element(
      good.begin(), good.end(), [](const Candidate* a, const Candidate* b) { return a->away < b->away; });
  return best->X;
}

}  // namespace ivpp
