#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "ivpp/catalog.hpp"
#include "ivpp/errors.hpp"
#include "ivpp/qrt.hpp"
#include "ivpp/seeding.hpp"

namespace ivpp {
namespace {

using Q = BigRational;

double rel(const Cx& a, const Cx& b) { return (a - b).abs() / (1.0 + b.abs()); }

PointC random_point(SplitMix64& g, std::size_t d) {
  PointC p;
  for (std::size_t i = 0; i < d; ++i) p.push_back(draw_complex(g, 2.0));
  return p;
}

ParamBindings euler_moments() { return {{"I", 1}, {"J", 2}, {"K", 3}}; }

// Construction -------------------------------------------------------------------

TEST(Catalog, NamesAndDimensions) {
  const std::vector<std::string> expected = {"lyness2", "lyness5", "lyness8", "lv3", "lv4",
                                             "toda3",   "euler",   "moebius2d", "qrt"};
  for (const auto& n : expected)
    EXPECT_NE(std::find(catalog_names().begin(), catalog_names().end(), n), catalog_names().end()) << n;
  EXPECT_EQ(catalog_get("lyness2", {{"a", 2}}).dim(), 1u);
  EXPECT_EQ(catalog_get("lyness5").dim(), 2u);
  EXPECT_EQ(catalog_get("lyness8").dim(), 3u);
  EXPECT_EQ(catalog_get("lv3").dim(), 3u);
  EXPECT_EQ(catalog_get("lv4").dim(), 4u);
  EXPECT_EQ(catalog_get("toda3").dim(), 6u);
  EXPECT_EQ(catalog_get("euler", euler_moments()).dim(), 3u);
  EXPECT_EQ(catalog_get("moebius2d", {{"a", 1}, {"b", 2}}).dim(), 2u);
}

TEST(Catalog, Lyness5Components) {
  const auto m = catalog_get("lyness5");
  ASSERT_EQ(m.components().size(), 2u);
  EXPECT_EQ(m.components()[0], RatFunc::parse("1 + x", "y"));
  EXPECT_EQ(m.components()[1], RatFunc::parse("x"));
  EXPECT_TRUE(m.invariants().empty());
}

TEST(Catalog, Lv3SymmetricPointIsFixed) {
  const auto img = apply_exact(catalog_get("lv3"), {1, 1, 1});
  EXPECT_EQ(img, (std::vector<Q>{1, 1, 1}));
}

TEST(Catalog, InvariantNames) {
  EXPECT_EQ(catalog_get("lv3").invariant_names(), (std::vector<std::string>{"r", "s"}));
  EXPECT_EQ(catalog_get("lv4").invariant_names(), (std::vector<std::string>{"H1", "H2", "r"}));
  EXPECT_EQ(catalog_get("toda3").invariants().size(), 4u);
  EXPECT_EQ(catalog_get("euler", euler_moments()).invariant_names(),
            (std::vector<std::string>{"H1", "H2"}));
  EXPECT_EQ(catalog_get("moebius2d", {{"a", 1}, {"b", 2}}).invariants()[0],
            RatFunc::parse("y*(1 + 2*x)"));
}

TEST(Catalog, EulerMomentsFixAlphaBetaGamma) {
  const auto m = catalog_get("euler", euler_moments());
  // alpha = (J - K) / 2I, beta = (K - I) / 2J, gamma = (I - J) / 2K.
  EXPECT_EQ(m.params().at("alpha"), Q(-1, 2));
  EXPECT_EQ(m.params().at("beta"), Q(1, 2));
  EXPECT_EQ(m.params().at("gamma"), Q(-1, 6));
}

// Independent QRT oracle: the 2d map and invariant from xi, eta, rho directly.
struct QrtOracle {
  BiquadParams p1, p2;
  static Q xi(const BiquadParams& q, const Q& t) { return q[0] * t * t + q[1] * t + q[2]; }
  static Q eta(const BiquadParams& q, const Q& t) { return q[1] * t * t + (q[3] - Q(2) * q[2]) * t + q[4]; }
  static Q rho(const BiquadParams& q, const Q& t) { return q[2] * t * t + q[4] * t + q[5]; }
  Q next(const Q& x, const Q& y) const {
    const Q num = eta(p1, y) * rho(p2, y) - rho(p1, y) * eta(p2, y) -
                  x * (rho(p1, y) * xi(p2, y) - xi(p1, y) * rho(p2, y));
    const Q den = rho(p1, y) * xi(p2, y) - xi(p1, y) * rho(p2, y) -
                  x * (xi(p1, y) * eta(p2, y) - eta(p1, y) * xi(p2, y));
    return num / den;
  }
  Q H(const Q& x, const Q& y) const {
    return -(xi(p1, x) * y * y + eta(p1, x) * y + rho(p1, x)) /
           (xi(p2, x) * y * y + eta(p2, x) * y + rho(p2, x));
  }
};

TEST(Catalog, QrtInstance) {
  const QRTParams P{{0, 0, 0, 1, 0, 0}, {0, 0, 1, 0, 0, 0}};
  const auto m = catalog_get("qrt", qrt_bindings(P));
  // H = -xy / (y - x)^2, Y = y^2 / x.
  EXPECT_EQ(m.invariants()[0], RatFunc::parse("-x*y", "(y - x)^2"));
  EXPECT_EQ(m.components()[1], RatFunc::parse("y^2", "x"));
  EXPECT_EQ(m.components()[0], RatFunc::parse("y"));
  EXPECT_EQ(invariants_exact(m, {2, 3})[0], Q(-6));
  const auto img = apply_exact(m, {2, 3});
  EXPECT_EQ(img, (std::vector<Q>{3, Q(9, 2)}));
  EXPECT_EQ(invariants_exact(m, img)[0], Q(-6));
}

TEST(Catalog, QrtAgreesWithOracleAtRationalPoints) {
  int checked = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const QRTParams P = draw_qrt_params(derive_seed(11, s));
    const auto m = catalog_get("qrt", qrt_bindings(P));
    const QrtOracle o{P.qp, P.qpp};
    SplitMix64 g(derive_seed(12, s));
    for (int k = 0; k < 5; ++k) {
      const Q x = draw_rational(g, 9, 4), y = draw_rational(g, 9, 4);
      try {
        const Q X = o.next(x, y), h = o.H(x, y);
        EXPECT_EQ(apply_exact(m, {x, y}), (std::vector<Q>{y, X}));
        EXPECT_EQ(invariants_exact(m, {x, y})[0], h);
        EXPECT_EQ(o.H(y, X), h);
        ++checked;
      } catch (const std::exception&) {
        // pole at this draw, in the oracle or the map
      }
    }
  }
  EXPECT_GT(checked, 80);
}

// apply -----------------------------------------------------------------------------

TEST(Apply, Lyness5Example) {
  const auto p = apply(catalog_get("lyness5"), {Cx(1), Cx(1)});
  EXPECT_EQ(p[0].re(), 2.0);
  EXPECT_EQ(p[1].re(), 1.0);
}

TEST(Apply, Lv3Example) {
  const auto m = catalog_get("lv3");
  EXPECT_EQ(apply_exact(m, {2, 3, 4}), (std::vector<Q>{4, 3, 2}));
  const auto p = apply(m, {Cx(2), Cx(3), Cx(4)});
  EXPECT_NEAR(p[0].re(), 4.0, 1e-12);
  EXPECT_NEAR(p[1].re(), 3.0, 1e-12);
  EXPECT_NEAR(p[2].re(), 2.0, 1e-12);
}

TEST(Apply, Lv3MatchesClosedFormOracle) {
  // X_j = x_j (1 - x_{j+1} + x_{j+1} x_{j+2}) / (1 - x_{j+2} + x_{j+2} x_j).
  const auto m = catalog_get("lv3");
  SplitMix64 g(5);
  for (int i = 0; i < 100; ++i) {
    const PointC p = random_point(g, 3);
    const auto img = apply(m, p);
    for (int j = 0; j < 3; ++j) {
      const Cx& a = p[j];
      const Cx& b = p[(j + 1) % 3];
      const Cx& c = p[(j + 2) % 3];
      EXPECT_LE(rel(img[j], a * (Cx(1) - b + b * c) / (Cx(1) - c + c * a)), 1e-10);
    }
  }
}

TEST(Apply, Lv3ClosedFormAgreesWithCyclicSolver) {
  const auto m = catalog_get("lv3");
  SplitMix64 g(6);
  for (int i = 0; i < 100; ++i) {
    const PointC p = random_point(g, 3);
    const auto a = apply(m, p);
    const auto b = lv_cyclic_step(p, m.invariants(), m.coords());
    for (int j = 0; j < 3; ++j) EXPECT_LE(rel(b[j], a[j]), 1e-10) << i;
  }
}

TEST(Apply, Lv4SolvesCyclicRelations) {
  const auto m = catalog_get("lv4");
  SplitMix64 g(7);
  for (int i = 0; i < 100; ++i) {
    const PointC x = random_point(g, 4);
    const auto X = apply(m, x);
    const auto E = apply_explicit(m, x);
    for (int j = 0; j < 4; ++j) {
      const Cx lhs = X[j] * (Cx(1) - X[(j + 3) % 4]);
      const Cx rhs = x[j] * (Cx(1) - x[(j + 1) % 4]);
      EXPECT_LE(rel(lhs, rhs), 1e-9);
      EXPECT_LE(rel(X[j], E[j]), 1e-9);
    }
  }
}

TEST(Apply, EulerSolvesHirotaKimuraSystem) {
  const auto m = catalog_get("euler", {{"alpha", Q(1, 3)}, {"beta", Q(-2, 5)}, {"gamma", Q(3, 7)}});
  const Cx a(1.0 / 3.0), b(-2.0 / 5.0), c(3.0 / 7.0);
  SplitMix64 g(8);
  for (int i = 0; i < 100; ++i) {
    const PointC p = random_point(g, 3);
    const auto q = apply(m, p);
    const Cx &x = p[0], &y = p[1], &z = p[2], &X = q[0], &Y = q[1], &Z = q[2];
    EXPECT_LE(rel(X - x, a * (Y * z + Z * y)), 1e-9);
    EXPECT_LE(rel(Y - y, b * (Z * x + X * z)), 1e-9);
    EXPECT_LE(rel(Z - z, c * (X * y + Y * x)), 1e-9);
  }
}

TEST(Apply, EulerZeroParametersIsIdentity) {
  const auto m = catalog_get("euler", {{"alpha", 0}, {"beta", 0}, {"gamma", 0}});
  const PointC p{Cx(0.5, 1), Cx(-2, 0.25), Cx(3)};
  const auto q = apply(m, p);
  for (int j = 0; j < 3; ++j) EXPECT_LE((q[j] - p[j]).abs(), 1e-15);
}

TEST(Apply, LynessFixedPoints) {
  const auto l2 = catalog_get("lyness2", {{"a", 3}});
  for (double s : {1.0, -1.0}) {
    const PointC p{Cx(s * std::sqrt(3.0))};
    EXPECT_LE((apply(l2, p)[0] - p[0]).abs(), 1e-10);
  }
  const auto l5 = catalog_get("lyness5");
  for (double s : {1.0, -1.0}) {
    const Cx v((1.0 + s * std::sqrt(5.0)) / 2.0);
    const auto q = apply(l5, {v, v});
    EXPECT_LE((q[0] - v).abs(), 1e-10);
    EXPECT_LE((q[1] - v).abs(), 1e-10);
  }
  const auto l8 = catalog_get("lyness8");
  for (double s : {1.0, -1.0}) {
    const Cx v(1.0 + s * std::sqrt(2.0));
    const auto q = apply(l8, {v, v, v});
    for (int j = 0; j < 3; ++j) EXPECT_LE((q[j] - v).abs(), 1e-10);
  }
}

TEST(Apply, PoleIsReported) {
  EXPECT_THROW(apply(catalog_get("lyness5"), {Cx(1), Cx(0)}), PoleError);
  EXPECT_THROW(apply(catalog_get("lyness2", {{"a", 1}}), {Cx(0)}), PoleError);
}

// invariants_eval ------------------------------------------------------------------

TEST(Invariants, Lv3Example) {
  const auto m = catalog_get("lv3");
  const auto h = invariants_eval(m, {Cx(2), Cx(3), Cx(4)});
  EXPECT_NEAR(h[0].re(), 24.0, 1e-12);
  EXPECT_NEAR(h[1].re(), -6.0, 1e-12);
  const auto h2 = invariants_eval(m, {Cx(4), Cx(3), Cx(2)});
  EXPECT_NEAR(h2[0].re(), 24.0, 1e-12);
  EXPECT_NEAR(h2[1].re(), -6.0, 1e-12);
}

TEST(Invariants, Lv3MatchesProductOracle) {
  const auto m = catalog_get("lv3");
  SplitMix64 g(9);
  for (int i = 0; i < 50; ++i) {
    const PointC p = random_point(g, 3);
    const auto h = invariants_eval(m, p);
    EXPECT_LE(rel(h[0], p[0] * p[1] * p[2]), 1e-12);
    EXPECT_LE(rel(h[1], (Cx(1) - p[0]) * (Cx(1) - p[1]) * (Cx(1) - p[2])), 1e-12);
  }
}

TEST(Invariants, TodaSumZero) {
  const auto m = catalog_get("toda3");
  const PointC p{Cx(1), Cx(2), Cx(-4), Cx(0.5), Cx(-0.25), Cx(0.75)};
  EXPECT_LE(invariants_eval(m, p)[0].abs(), 1e-15);
}

TEST(Invariants, ConservedAlongOneStep) {
  const std::vector<std::pair<std::string, ParamBindings>> maps = {
      {"lv3", {}},
      {"lv4", {}},
      {"toda3", {}},
      {"euler", euler_moments()},
      {"euler", {{"alpha", Q(1, 2)}, {"beta", Q(2, 3)}, {"gamma", Q(-3, 4)}}},
      {"moebius2d", {{"a", Q(1, 2)}, {"b", 3}}},
      {"qrt", qrt_bindings(draw_qrt_params(3))}};
  for (const auto& [name, params] : maps) {
    const auto m = catalog_get(name, params);
    SplitMix64 g(derive_seed(10, m.dim()));
    int tested = 0;
    for (int i = 0; i < 100; ++i) {
      const PointC p = random_point(g, m.dim());
      try {
        const auto before = invariants_eval(m, p);
        const auto after = invariants_eval(m, apply(m, p));
        for (std::size_t k = 0; k < before.size(); ++k)
          EXPECT_LE((after[k] - before[k]).abs(), 1e-9 * (1.0 + before[k].abs())) << name << " " << k;
        ++tested;
      } catch (const PoleError&) {
      }
    }
    EXPECT_GE(tested, 95) << name;
    EXPECT_EQ(check_invariants_exact(m, 20, 4), 0u) << name;
  }
}

TEST(Invariants, EulerPrintedFormsForMoments) {
  // H1 = (I x^2 + J y^2 + K z^2) / (1 - beta gamma x^2), H2 with squared moments.
  const auto m = catalog_get("euler", euler_moments());
  const double bg = 0.5 * (-1.0 / 6.0);
  SplitMix64 g(13);
  for (int i = 0; i < 100; ++i) {
    const PointC p = random_point(g, 3);
    const Cx den = Cx(1) - Cx(bg) * p[0] * p[0];
    const Cx h1 = (p[0] * p[0] + Cx(2) * p[1] * p[1] + Cx(3) * p[2] * p[2]) / den;
    const Cx h2 = (p[0] * p[0] + Cx(4) * p[1] * p[1] + Cx(9) * p[2] * p[2]) / den;
    const auto h = invariants_eval(m, p);
    EXPECT_LE(rel(h[0], h1), 1e-12);
    EXPECT_LE(rel(h[1], h2), 1e-12);
    const auto after = invariants_eval(m, apply(m, p));
    EXPECT_LE(rel(after[0], h1), 1e-9);
    EXPECT_LE(rel(after[1], h2), 1e-9);
  }
}

// Errors ------------------------------------------------------------------------------

TEST(CatalogErrors, DistinctErrorKinds) {
  EXPECT_THROW(catalog_get("lv7"), UnknownMapError);
  EXPECT_THROW(catalog_get("moebius2d", {{"a", 1}}), MissingParameterError);
  EXPECT_THROW(catalog_get("lyness2"), MissingParameterError);
  EXPECT_THROW(catalog_get("moebius2d", {{"a", 2}, {"b", Q(1, 2)}}), DegenerateParametersError);
  EXPECT_THROW(catalog_get("lv3", {{"a", 1}}), UnknownParameterError);
  EXPECT_THROW(catalog_get("euler", {{"I", 0}, {"J", 1}, {"K", 2}}), DegenerateParametersError);
  EXPECT_THROW(catalog_get("qrt", qrt_bindings({{0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}})),
               DegenerateParametersError);
}

TEST(CatalogErrors, ArityMismatch) {
  EXPECT_THROW(apply(catalog_get("lv3"), {Cx(1), Cx(2)}), ArityError);
}

TEST(Catalog, ParameterSlots) {
  EXPECT_EQ(catalog_parameters("moebius2d"), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(catalog_parameters("euler"), (std::vector<std::string>{"alpha", "beta", "gamma"}));
  EXPECT_TRUE(catalog_parameters("lv3").empty());
  EXPECT_EQ(catalog_parameters("qrt").size(), 12u);
}

}  // namespace
}  // namespace ivpp
