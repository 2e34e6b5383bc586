#include <gtest/gtest.h>

#include <algorithm>

#include "ivpp/algebra/polyops.hpp"
#include "ivpp/catalog.hpp"
#include "ivpp/elim.hpp"
#include "ivpp/errors.hpp"
#include "ivpp/fixtures.hpp"

namespace ivpp {
namespace {

using Q = BigRational;

// Recurrences ------------------------------------------------------------------------------

TEST(FixtureRecurrence, AllPassBehaviourAndDerivation) {
  EXPECT_EQ(recurrence_fixtures().size(), 19u);
  for (const auto& f : recurrence_fixtures()) {
    const auto v = check_fixture(f, 1e-8);
    EXPECT_TRUE(v.ok()) << f.label << ": " << v.note;
    EXPECT_EQ(v.passed, v.samples) << f.label;
    EXPECT_LE(v.max_residual, 1e-8) << f.label;
    if (f.derive) EXPECT_TRUE(v.derived.value_or(false)) << f.label;
  }
}

TEST(FixtureRecurrence, TodaFirstPolynomialAtOnes) {
  // (x + y + u) X + (u + v + y) y at x = y = u = v = 1 gives 3 X + 3, so X = -1.
  const auto& f = recurrence_fixture("toda3 F3_1");
  const ExactAssignment ones{{"x", 1}, {"y", 1}, {"u", 1}, {"v", 1}};
  auto at = [&](const Q& X) {
    ExactAssignment a = ones;
    a["X"] = X;
    return f.F.eval_exact(a);
  };
  EXPECT_EQ(at(Q(-1)), Q(0));
  EXPECT_EQ(at(Q(0)), Q(3));
}

TEST(FixtureRecurrence, NormRemovesAuxiliaries) {
  for (const auto& f : recurrence_fixtures()) {
    const MPoly n = fixture_norm(f);
    for (const auto& a : f.aux) EXPECT_EQ(n.degree(a.symbol), 0) << f.label;
    if (f.aux.empty()) EXPECT_TRUE(equal_up_to_scale(n, f.F)) << f.label;
  }
  EXPECT_FALSE(recurrence_fixture("euler F3_1").aux.empty());
}

TEST(FixtureRecurrence, UnknownLabel) {
  EXPECT_THROW(recurrence_fixture("no such fixture"), Error);
  EXPECT_THROW(route_fixture("no such fixture"), Error);
}

TEST(FixtureRecurrence, CompareWithDerivedFactors) {
  const auto m = catalog_get("lv3");
  const auto fs = eliminate(recurrence_problem(m, 2, "x"));
  const auto diffs = compare_with_fixtures(m, 2, "x", fs);
  ASSERT_FALSE(diffs.empty());
  for (const auto& d : diffs) EXPECT_TRUE(d.match) << d.label << " " << d.expected;

  const std::vector<MPoly> wrong{MPoly::parse("X - x")};
  for (const auto& d : compare_with_fixtures(m, 2, "x", wrong)) EXPECT_FALSE(d.match) << d.label;
}

// Routes ------------------------------------------------------------------------------------

TEST(FixtureRoutes, PrintedErrataFailAndCorrectionsPass) {
  int corrected = 0;
  for (const auto& f : route_fixtures()) {
    const auto v = check_routes(f, 1e-8);
    const bool has_correction =
        std::any_of(route_fixtures().begin(), route_fixtures().end(),
                    [&](const RouteFixture& g) { return g.erratum_of == f.label; });
    if (has_correction) {
      EXPECT_FALSE(v.ok()) << f.label;
      EXPECT_FALSE(v.note.empty()) << f.label;
    } else {
      EXPECT_TRUE(v.ok()) << f.label << ": " << v.note;
    }
    if (!f.erratum_of.empty()) {
      ++corrected;
      EXPECT_FALSE(f.erratum.empty()) << f.label;
      EXPECT_NO_THROW(route_fixture(f.erratum_of)) << f.label;
    }
  }
  EXPECT_EQ(corrected, 4);
}

TEST(FixtureRoutes, Lv4PeriodTwoExactOracle) {
  const auto& f = route_fixture("lv4 period-2 map");
  ASSERT_TRUE(f.exact);
  ASSERT_EQ(f.coords, (std::vector<std::string>{"x", "y", "z"}));
  const auto& step = f.routes.at(0).at(0);
  auto apply_step = [&](const std::vector<Q>& p) {
    const ExactAssignment at{{"x", p[0]}, {"y", p[1]}, {"z", p[2]}};
    std::vector<Q> out;
    for (const auto& r : step) out.push_back(r.eval_exact(at));
    return out;
  };
  // Oracle: x / (x + z - 1), y (1 - x - z), z / (x + z - 1).
  auto oracle = [](const std::vector<Q>& p) {
    const Q s = p[0] + p[2] - Q(1);
    return std::vector<Q>{p[0] / s, -p[1] * s, p[2] / s};
  };
  const std::vector<Q> p0{Q(2), Q(5), Q(1, 4)};
  const auto p1 = apply_step(p0);
  EXPECT_EQ(p1, (std::vector<Q>{Q(8, 5), Q(-25, 4), Q(1, 5)}));
  EXPECT_EQ(p1, oracle(p0));
  EXPECT_EQ(apply_step(p1), p0);

  const auto r = check_route_exact(f, 20, 5);
  EXPECT_EQ(r.points, 20);
  EXPECT_EQ(r.failures, 0);
  EXPECT_EQ(r.step_mismatches, 0);
}

TEST(FixtureRoutes, PrintedTodaCycleMismatchesItsIterate) {
  const auto r = check_route_exact(route_fixture("toda3 3-cycle"), 20, 5);
  EXPECT_EQ(r.failures, 0);
  EXPECT_GT(r.step_mismatches, 0);
  EXPECT_FALSE(r.first_mismatch.empty());
  const auto c = check_route_exact(route_fixture("toda3 3-cycle (corrected)"), 20, 5);
  EXPECT_EQ(c.failures, 0);
  EXPECT_EQ(c.step_mismatches, 0);
}

TEST(FixtureRoutes, Deterministic) {
  const auto& f = route_fixture("lv3 omega routes (corrected)");
  const auto a = check_routes(f, 1e-8, 10, 3), b = check_routes(f, 1e-8, 10, 3);
  EXPECT_EQ(a.passed, b.passed);
  EXPECT_EQ(a.max_residual, b.max_residual);
}

}  // namespace
}  // namespace ivpp
