#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "ivpp/biquad.hpp"
#include "ivpp/catalog.hpp"
#include "ivpp/errors.hpp"
#include "ivpp/qrt.hpp"
#include "ivpp/seeding.hpp"
#include "ivpp/varieties.hpp"

namespace ivpp {
namespace {

using Q = BigRational;

MPoly P(const char* s) { return MPoly::parse(s); }

// gamma_get -------------------------------------------------------------------------

TEST(GammaGet, PrintedGenerators) {
  EXPECT_EQ(gamma_get("lv3", 3).gammas[0], P("r^2 + s^2 - r*s + r + s + 1"));
  EXPECT_EQ(gamma_get("lv3", 2).gammas[0], P("s + 1"));
  EXPECT_EQ(gamma_get("moebius2d", 6).gammas[0], P("1 - h + h^2 + 3*a*b*h"));
  EXPECT_EQ(gamma_get("lv4", 2).gammas[0], P("H1 - 2"));
  const auto toda = gamma_get("toda3", 3);
  ASSERT_EQ(toda.gammas.size(), 2u);
  EXPECT_EQ(toda.gammas[0], P("t1"));
  EXPECT_EQ(toda.gammas[1], P("t2"));
}

TEST(GammaGet, BiquadGenerators) {
  EXPECT_EQ(biquad_gamma(3), P("a*f - b*e - 3*c^2 + c*d"));
  EXPECT_EQ(biquad_gamma(4), P("2*a*c*f - a*d*f + b^2*f + a*e^2 - 2*c^3 + c^2*d - 2*b*c*e"));
}

TEST(GammaGet, Periods) {
  EXPECT_EQ(gamma_periods("lv3"), (std::vector<int>{2, 3, 4, 5}));
  EXPECT_EQ(gamma_periods("lv4"), (std::vector<int>{2}));
  EXPECT_EQ(gamma_periods("toda3"), (std::vector<int>{3}));
  EXPECT_EQ(gamma_periods("euler"), (std::vector<int>{3}));
  EXPECT_EQ(gamma_periods("moebius2d"), (std::vector<int>{2, 3, 4, 5, 6}));
  EXPECT_EQ(gamma_periods("qrt"), (std::vector<int>{3, 4, 5}));
  EXPECT_EQ(gamma_periods("biquad"), (std::vector<int>{3, 4, 5}));
  EXPECT_TRUE(gamma_periods("lyness5").empty());
}

TEST(GammaGet, UnknownPairListsPeriods) {
  EXPECT_THROW(gamma_get("lv3", 7), UnknownVarietyError);
  EXPECT_THROW(gamma_get("lyness5", 5), UnknownVarietyError);
  try {
    gamma_get("lv3", 7);
  } catch (const UnknownVarietyError& e) {
    EXPECT_NE(std::string(e.what()).find("2"), std::string::npos);
  }
}

TEST(GammaGet, BoundToMapParameters) {
  const auto m = catalog_get("moebius2d", {{"a", 1}, {"b", 2}});
  const auto g = gamma_get(m, 4);
  ASSERT_TRUE(g.bound());
  // 1 + H^2 + 4 H with H = y (1 + 2x).
  const auto nums = g.composed_numerators();
  ASSERT_EQ(nums.size(), 1u);
  const MPoly H = P("y*(1 + 2*x)");
  EXPECT_EQ(nums[0], MPoly(1) + H * H + MPoly(4) * H);
}

// membership -------------------------------------------------------------------------

TEST(Membership, Lv3PeriodTwo) {
  const auto g = gamma_get(catalog_get("lv3"), 2);
  const auto in = membership(g, {Cx(2), Cx(3), Cx(1.5)}, 1e-9);
  EXPECT_TRUE(in.member);
  EXPECT_LE(in.residuals[0], 1e-15);
  const auto out = membership(g, {Cx(2), Cx(3), Cx(4)}, 1e-9);
  EXPECT_FALSE(out.member);
  EXPECT_GT(out.residuals[0], 0.1);
}

TEST(Membership, TodaZeroTraces) {
  // (x, y, z, u) = (1, 2, -1, 1), w = -(3 + v) from t1 = 0, then t2 = 0 is a
  // quadratic in v whose coefficients are read off at v = -1, 0, 1.
  auto t2 = [](const std::complex<double>& v) {
    const std::complex<double> x = 1, y = 2, z = -1, u = 1, w = -(3.0 + v);
    return u * v + u * w + u * z + v * w + v * x + w * y + x * y + x * z + y * z;
  };
  const auto c0 = t2(0.0), p = t2(1.0), m = t2(-1.0);
  const auto c2 = (p + m) / 2.0 - c0, c1 = (p - m) / 2.0;
  const auto disc = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
  const auto g = gamma_get(catalog_get("toda3"), 3);
  for (double sign : {1.0, -1.0}) {
    const std::complex<double> v = (-c1 + sign * disc) / (2.0 * c2);
    const PointC pt{Cx(1), Cx(2), Cx(-1), Cx(1), Cx(v), Cx(-(3.0 + v))};
    EXPECT_TRUE(membership(g, pt, 1e-9).member);
  }
}

// sample_on_variety ------------------------------------------------------------------

TEST(Sample, MoebiusPeriodTwoSolvesForY) {
  const auto g = gamma_get(catalog_get("moebius2d", {{"a", 1}, {"b", 0}}), 2);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto p = sample_on_variety(g, s);
    EXPECT_LE((p[1] - Cx(-1)).abs(), 1e-12);
  }
}

TEST(Sample, Lv3PeriodTwoMatchesLinearSolve) {
  // (1 - x)(1 - y)(1 - z) = -1 gives z = 1 + 1 / ((1 - x)(1 - y)).
  const auto g = gamma_get(catalog_get("lv3"), 2);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto p = sample_on_variety(g, s);
    const Cx z = Cx(1) + Cx(1) / ((Cx(1) - p[0]) * (Cx(1) - p[1]));
    EXPECT_LE((p[2] - z).abs(), 1e-9 * (1.0 + z.abs()));
  }
}

TEST(Sample, DrawsFromGrid) {
  const auto g = gamma_get(catalog_get("lv3"), 3);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto p = sample_on_variety(g, s);
    for (int j = 0; j < 2; ++j) {
      EXPECT_EQ(p[j].re() * 8.0, std::round(p[j].re() * 8.0));
      EXPECT_EQ(p[j].im() * 8.0, std::round(p[j].im() * 8.0));
      EXPECT_LE(std::abs(p[j].re()), 3.0);
      EXPECT_LE(std::abs(p[j].im()), 3.0);
      EXPECT_GE(p[j].abs(), 1e-3);
    }
  }
}

std::vector<VarietyGenerator> all_bound_generators() {
  std::vector<VarietyGenerator> out;
  const std::vector<std::pair<std::string, ParamBindings>> maps = {
      {"lv3", {}},
      {"lv4", {}},
      {"toda3", {}},
      {"euler", {{"I", 1}, {"J", 2}, {"K", 3}}},
      {"moebius2d", {{"a", Q(1, 2)}, {"b", 3}}},
      {"qrt", qrt_bindings(draw_qrt_params(21))}};
  for (const auto& [name, params] : maps) {
    const auto m = catalog_get(name, params);
    for (int n : gamma_periods(name)) out.push_back(gamma_get(m, n));
  }
  return out;
}

TEST(Sample, SoundOverThousandDraws) {
  const auto gens = all_bound_generators();
  int draws = 0, failures = 0;
  for (int i = 0; draws < 1000; ++i) {
    const auto& g = gens[static_cast<std::size_t>(i) % gens.size()];
    const auto p = sample_on_variety(g, derive_seed(77, static_cast<std::uint64_t>(i)));
    if (!membership(g, p, 1e-9).member) ++failures;
    ++draws;
  }
  EXPECT_EQ(failures, 0);
}

TEST(Sample, Deterministic) {
  for (const auto& g : all_bound_generators()) {
    const auto a = sample_on_variety(g, 1234), b = sample_on_variety(g, 1234);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t j = 0; j < a.size(); ++j) EXPECT_TRUE(a[j] == b[j]) << g.map_name << " " << g.period;
  }
}

// Cross-family consistency ------------------------------------------------------------

TEST(CrossFamily, BiquadGammaThreeAtLv3Identification) {
  const MPoly r = P("r"), s = P("s");
  const std::array<MPoly, 6> q = {r + MPoly(1),
                                   s - MPoly(2) * r - MPoly(1),
                                   r - s,
                                   s * s + r * s + MPoly(5) * r - MPoly(2) * s + MPoly(1),
                                   -(r * (s + MPoly(1))),
                                   MPoly(0)};
  EXPECT_EQ(gamma_biquad(3, q), -(s * gamma_get("lv3", 3).gammas[0]));
  EXPECT_EQ(from_3dlv_symbolic(), q);
}

// Transcription checksums ------------------------------------------------------------

TEST(Checksums, BulkyTranscriptionsMatch) {
  const auto results = verify_transcription_checksums();
  ASSERT_EQ(results.size(), 2u);
  for (const auto& c : results) {
    EXPECT_EQ(c.points, 5) << c.label;
    EXPECT_EQ(c.mismatches, 0) << c.label;
  }
  // Hand value: at (a..f) = (0, 1, 0, 1, 0, 1) only -b^4 f^2 survives.
  EXPECT_EQ(gamma_biquad(5, BiquadParams{0, 1, 0, 1, 0, 1}), Q(-1));
}

TEST(Catalog, VarietiesJsonListsEveryPair) {
  const std::string js = varieties_catalog_json();
  for (const char* needle : {"\"lv3\"", "\"toda3\"", "\"moebius2d\"", "\"euler\""})
    EXPECT_NE(js.find(needle), std::string::npos) << needle;
}

}  // namespace
}  // namespace ivpp
