#include <gtest/gtest.h>

#include "ivpp/catalog.hpp"
#include "ivpp/errors.hpp"
#include "ivpp/orbit.hpp"
#include "ivpp/seeding.hpp"
#include "ivpp/varieties.hpp"

namespace ivpp {
namespace {

std::vector<double> first_coords(const std::vector<PointC>& pts) {
  std::vector<double> out;
  for (const auto& p : pts) {
    EXPECT_LE(std::abs(p[0].im()), 1e-12);
    out.push_back(p[0].re());
  }
  return out;
}

void expect_near(const std::vector<double>& got, const std::vector<double>& want) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-12) << i;
}

TEST(Iterate, Lyness5Sequence) {
  // x_{k+1} = (1 + x_k) / x_{k-1} from 1, 1.
  const auto pts = iterate(catalog_get("lyness5"), {Cx(1), Cx(1)}, 5);
  expect_near(first_coords(pts), {1, 2, 3, 2, 1, 1});
}

TEST(Iterate, Lyness8Sequence) {
  const auto pts = iterate(catalog_get("lyness8"), {Cx(1), Cx(1), Cx(1)}, 8);
  expect_near(first_coords(pts), {1, 3, 5, 9, 5, 3, 1, 1, 1});
}

TEST(Iterate, Lyness2Involution) {
  const auto pts = iterate(catalog_get("lyness2", {{"a", 7}}), {Cx(5)}, 2);
  expect_near(first_coords(pts), {5, 1.4, 5});
}

TEST(Iterate, ZeroStepsAndNegative) {
  const auto m = catalog_get("lyness5");
  EXPECT_EQ(iterate(m, {Cx(1), Cx(2)}, 0).size(), 1u);
  EXPECT_THROW(iterate(m, {Cx(1), Cx(2)}, -1), ArityError);
}

TEST(Iterate, PoleReportsStep) {
  // (-1, 1) -> (0, -1) -> (-1, 0) -> division by zero.
  try {
    iterate(catalog_get("lyness5"), {Cx(-1), Cx(1)}, 5);
    FAIL() << "expected a pole";
  } catch (const PoleError& e) {
    EXPECT_EQ(e.step(), 3u);
  }
}

// verify_period ---------------------------------------------------------------------

TEST(VerifyPeriod, Lv3SampleOnPeriodTwo) {
  const auto m = catalog_get("lv3");
  const auto g = gamma_get(m, 2);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto r = verify_period(m, sample_on_variety(g, s), 2, 1e-9);
    EXPECT_LE(r.return_error, 1e-9);
    EXPECT_TRUE(r.primitive);
    EXPECT_FALSE(r.fixed_point);
    EXPECT_LE(r.drift, 1e-9);
    EXPECT_EQ(r.points.size(), 3u);
  }
}

TEST(VerifyPeriod, Lyness5ArbitraryComplexData) {
  const auto m = catalog_get("lyness5");
  int passed = 0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    SplitMix64 g(derive_seed(3, s));
    const PointC p0{draw_complex(g, 2.0), draw_complex(g, 2.0)};
    const auto r = verify_period(m, p0, 5, 1e-9);
    if (r.primitive && r.passed(1e-9)) ++passed;
  }
  EXPECT_EQ(passed, 1000);
}

TEST(VerifyPeriod, FixedPointIsNotASuccess) {
  const auto r = verify_period(catalog_get("lv3"), {Cx(1), Cx(1), Cx(1)}, 2, 1e-9);
  EXPECT_TRUE(r.fixed_point);
  EXPECT_FALSE(r.primitive);
  EXPECT_FALSE(r.passed(1e-9));
}

TEST(VerifyPeriod, NonPrimitiveAtMultiple) {
  const auto m = catalog_get("lv3");
  const auto p0 = sample_on_variety(gamma_get(m, 2), 5);
  const auto r = verify_period(m, p0, 4, 1e-9);
  EXPECT_LE(r.return_error, 1e-9);
  EXPECT_FALSE(r.primitive);
}

TEST(VerifyPeriod, RejectsShortPeriod) {
  EXPECT_THROW(verify_period(catalog_get("lyness5"), {Cx(1), Cx(2)}, 1, 1e-9), ArityError);
}

// conservation ------------------------------------------------------------------------

TEST(Conservation, Lv3FromExamplePoint) {
  const auto m = catalog_get("lv3");
  EXPECT_LE(conservation(m, {Cx(2), Cx(3), Cx(4)}, 6), 1e-9);
  EXPECT_EQ(conservation(m, {Cx(2), Cx(3), Cx(4)}, 0), 0.0);
}

TEST(Conservation, EulerGenericParameters) {
  const auto m = catalog_get("euler", {{"alpha", BigRational(2, 7)}, {"beta", BigRational(-1, 3)},
                                       {"gamma", BigRational(5, 11)}});
  SplitMix64 g(17);
  for (int i = 0; i < 20; ++i) {
    const PointC p{draw_complex(g, 1.0), draw_complex(g, 1.0), draw_complex(g, 1.0)};
    EXPECT_LE(conservation(m, p, 6), 1e-9);
  }
}

TEST(Conservation, MapWithoutInvariantsHasNoDrift) {
  EXPECT_EQ(conservation(catalog_get("lyness8"), {Cx(1), Cx(2), Cx(3)}, 4), 0.0);
}

// exclusivity_scan --------------------------------------------------------------------

std::vector<int> returns(const ExclusivityScan& s) {
  std::vector<int> out;
  for (std::size_t k = 0; k < s.returned.size(); ++k)
    if (s.returned[k]) out.push_back(static_cast<int>(k) + 2);
  return out;
}

TEST(Exclusivity, Lv3GenericPointNeverReturns) {
  const auto s = exclusivity_scan(catalog_get("lv3"), {Cx(2), Cx(3), Cx(4)}, 12, 1e-9);
  EXPECT_EQ(s.returned.size(), 11u);
  EXPECT_TRUE(returns(s).empty());
}

TEST(Exclusivity, Lv3PeriodThreeSampleReturnsAtMultiples) {
  const auto m = catalog_get("lv3");
  const auto p0 = sample_on_variety(gamma_get(m, 3), 2);
  EXPECT_EQ(returns(exclusivity_scan(m, p0, 12, 1e-8)), (std::vector<int>{3, 6, 9, 12}));
}

TEST(Exclusivity, MoebiusNegationReturnsAtEvenSteps) {
  // a = b = 0 and y = -1: X = -x.
  const auto m = catalog_get("moebius2d", {{"a", 0}, {"b", 0}});
  EXPECT_EQ(returns(exclusivity_scan(m, {Cx(0.75, 0.5), Cx(-1)}, 12, 1e-9)),
            (std::vector<int>{2, 4, 6, 8, 10, 12}));
}

TEST(Exclusivity, GenericPointsPerMap) {
  const std::vector<std::pair<std::string, ParamBindings>> maps = {
      {"lv3", {}}, {"lv4", {}}, {"toda3", {}}, {"euler", {{"I", 1}, {"J", 2}, {"K", 3}}},
      {"moebius2d", {{"a", BigRational(1, 2)}, {"b", 3}}}};
  for (const auto& [name, params] : maps) {
    const auto m = catalog_get(name, params);
    SplitMix64 g(derive_seed(31, m.dim()));
    for (int i = 0; i < 20; ++i) {
      PointC p;
      for (std::size_t j = 0; j < m.dim(); ++j) p.push_back(draw_grid(g).value());
      EXPECT_TRUE(returns(exclusivity_scan(m, p, 12, 1e-9)).empty()) << name << " " << i;
    }
  }
}

}  // namespace
}  // namespace ivpp
