#include <gtest/gtest.h>

#include <map>

#include "oracles.hpp"
#include "vinotab/waring_bounds.hpp"

using namespace vinotab;

namespace {

const ExponentTable& catalog(int k) {
  static std::map<int, ExponentTable> cache;
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, build_catalog(k)).first;
  return it->second;
}

oracle::Exponents as_oracle(const ExponentTable& t) {
  oracle::Exponents e{t.k(), {}};
  for (long s = 1; s <= t.s_max(); ++s) e.d.push_back(t.delta(s));
  return e;
}

}  // namespace

TEST(HuaBlend, WorkedValues) {
  EXPECT_EQ(hua_blend(5, 18, 3, Rational(2, 7)), Rational(83, 3));
  EXPECT_EQ(hua_blend(6, 26, 3, Rational(1, 3)), Rational(43));
  // delta 0: 2t - (2t - 2^{j+1}) / (k - j)
  EXPECT_EQ(hua_blend(7, 9, 3, Rational(0)), Rational(35, 2));
  EXPECT_THROW(hua_blend(7, 8, 3, Rational(0)), std::invalid_argument);
  EXPECT_THROW(hua_blend(5, 18, 3, Rational(1)), std::invalid_argument);
  EXPECT_THROW(hua_blend(5, 8, 3, Rational(0)), std::invalid_argument);
  EXPECT_THROW(hua_blend(5, 18, 4, Rational(0)), std::invalid_argument);
}

TEST(HuaRoute, MatchesBruteForce) {
  for (int k = 3; k <= 14; ++k) {
    const auto r = hua_route_bound(catalog(k));
    const auto o = oracle::naive_s1(as_oracle(catalog(k)));
    EXPECT_EQ(r.value, o.value) << k;
    EXPECT_EQ(r.witness_at("t"), o.witness[0]) << k;
    EXPECT_EQ(r.witness_at("j"), o.witness[1]) << k;
    EXPECT_EQ(hua_blend(k, r.witness_at("t"), static_cast<int>(r.witness_at("j")),
                        catalog(k).delta(r.witness_at("t"))),
              r.value);
  }
}

TEST(HuaRoute, KnownValues) {
  EXPECT_EQ(hua_route_bound(catalog(3)).value, Rational(9));
  EXPECT_LE(hua_route_bound(catalog(5)).value, Rational(27413, 1000));
  EXPECT_LE(hua_route_bound(catalog(6)).value, Rational(42710, 1000));
  const auto closed = build_catalog(5, SourceSet::closed_form_only());
  EXPECT_EQ(hua_blend(5, 18, 3, closed.delta(18)), Rational(83, 3));
  EXPECT_LE(hua_route_bound(closed).value, Rational(83, 3));
}

TEST(HuaRoute, SmallDegreeChain) {
  // 2k^2 - 4k - 4 + 6/(k-4) bounds s1 for 5 <= k <= 7; it is s0(k, k^2-k+1, 4) once j = 4 is admissible
  for (int k = 5; k <= 7; ++k) {
    const Rational chain = Rational(2L * k * k - 4L * k - 4) + Rational(6, k - 4);
    if (k >= 6) EXPECT_EQ(hua_blend(k, zero_threshold(k), 4, Rational(0)), chain);
    EXPECT_LE(hua_route_bound(catalog(k)).value, chain);
  }
  for (int k = 8; k <= 16; ++k) EXPECT_LT(hua_route_bound(catalog(k)).value, Rational(2L * k * k - 4L * k - 2));
}

TEST(DeltaPlus, Values) {
  // Delta_{1,5} - 1 = 13, Delta_{1,4} = 9
  EXPECT_EQ(delta_plus(1, catalog(5), catalog(4), DeltaPlusRule::Min), Rational(9));
  EXPECT_EQ(delta_plus(1, catalog(5), catalog(4), DeltaPlusRule::Max), Rational(13));
  const Rational a = catalog(4).delta(12) - Rational(1);
  const Rational b = catalog(3).delta(12);
  EXPECT_EQ(delta_plus(12, catalog(4), catalog(3), DeltaPlusRule::Min), max(Rational(0), min(a, b)));
  for (int k = 4; k <= 9; ++k) {
    const long v = static_cast<long>(k) * k - 3L * k + 3;
    EXPECT_EQ(delta_plus(v, catalog(k), catalog(k - 1), DeltaPlusRule::Min), Rational(0));
    EXPECT_GE(delta_plus(v, catalog(k), catalog(k - 1)), Rational(0));
  }
}

TEST(MixedBlend, DegeneratesWhenDeltaPlusVanishes) {
  for (long t = 2; t <= 30; t += 3) {
    for (long w = 1; w <= 4; ++w) {
      for (long v = 1; 2 * v + w * (w - 1) < 2 * t; v += 2) {
        for (const Rational& d : {Rational(0), Rational(1, 3), Rational(9, 10)}) {
          EXPECT_EQ(mixed_blend(5, t, v, w, d, Rational(0)), Rational(2 * v + w * (w - 1)));
        }
      }
    }
  }
  EXPECT_EQ(mixed_blend(5, 2, 1, 1, Rational(0), Rational(0)), Rational(2));
  EXPECT_THROW(mixed_blend(5, 10, 2, 1, Rational(1), Rational(0)), std::invalid_argument);
  EXPECT_THROW(mixed_blend(5, 10, 2, 5, Rational(0), Rational(0)), std::invalid_argument);
  EXPECT_THROW(mixed_blend(5, 3, 2, 2, Rational(0), Rational(0)), std::invalid_argument);
}

TEST(MixedBlend, RegressionPin) {
  const Rational dplus = delta_plus(69, catalog(10), catalog(9));
  const Rational u = mixed_blend(10, 91, 69, 3, catalog(10).delta(91), dplus);
  EXPECT_EQ(catalog(10).delta(91), Rational(0));
  EXPECT_EQ(u, Rational(182) - Rational(38) / (Rational(1) + dplus / Rational(3)));
  EXPECT_EQ(u, Rational(1139759, 7870));
}

TEST(MixedRoute, FastSearchMatchesOracle) {
  for (int k = 4; k <= 7; ++k) {
    for (auto rule : {DeltaPlusRule::Max, DeltaPlusRule::Min}) {
      const auto fast = mixed_route_bound(catalog(k), catalog(k - 1), rule);
      const auto o = oracle::naive_u1(as_oracle(catalog(k)), as_oracle(catalog(k - 1)), rule == DeltaPlusRule::Max);
      EXPECT_EQ(fast.value, o.value) << k;
      EXPECT_EQ(fast.witness_at("t"), o.witness[0]) << k;
      EXPECT_EQ(fast.witness_at("v"), o.witness[1]) << k;
      EXPECT_EQ(fast.witness_at("w"), o.witness[2]) << k;
      const auto ex = mixed_route_bound_exhaustive(catalog(k), catalog(k - 1), rule);
      EXPECT_EQ(ex.value, fast.value);
      EXPECT_EQ(ex.witness, fast.witness);
    }
  }
}

TEST(MixedRoute, WitnessReproducesValue) {
  for (int k = 8; k <= 16; k += 4) {
    const auto r = mixed_route_bound(catalog(k), catalog(k - 1));
    const long t = r.witness_at("t");
    const long v = r.witness_at("v");
    const long w = r.witness_at("w");
    EXPECT_EQ(mixed_blend(k, t, v, w, catalog(k).delta(t), delta_plus(v, catalog(k), catalog(k - 1))), r.value);
  }
}

TEST(Thresholds, SmallDegrees) {
  const auto b5 = threshold_bounds(catalog(5), &catalog(4));
  EXPECT_EQ(b5.gtilde.value, Rational(28));
  EXPECT_EQ(b5.gtilde_plus.value, Rational(14));
  const auto b6 = threshold_bounds(catalog(6), &catalog(5));
  EXPECT_EQ(b6.gtilde.value, Rational(43));
  const auto b8 = threshold_bounds(catalog(8), &catalog(7));
  EXPECT_LE(b8.gtilde.value, Rational(94));
  const auto b12 = threshold_bounds(12);
  EXPECT_LE(b12.gtilde.value, Rational(199));
  EXPECT_LE(b12.gtilde_plus.value, Rational(100));
  const auto b3 = threshold_bounds(catalog(3), nullptr);
  EXPECT_FALSE(b3.mixed_route);
  EXPECT_EQ(b3.gtilde.value, Rational(10));
}

TEST(Thresholds, DefinitionsHold) {
  for (int k = 4; k <= 12; ++k) {
    const auto b = threshold_bounds(catalog(k), &catalog(k - 1));
    ASSERT_TRUE(b.mixed_route);
    const Rational s1 = b.hua_route.value;
    const Rational u1 = b.mixed_route->value;
    EXPECT_EQ(b.gtilde.value, Rational(min(s1, u1).floor() + 1));
    const Rational half_s = Rational((s1 / Rational(2)).floor());
    const Rational half_u = Rational((u1 / Rational(2)).floor());
    EXPECT_EQ(b.gtilde_plus.value, Rational(1) + min(half_s, half_u));
  }
}

TEST(Thresholds, FewerSourcesNeverHelp) {
  for (int k = 5; k <= 9; ++k) {
    const auto full = threshold_bounds(catalog(k), &catalog(k - 1));
    const auto km1 = build_catalog(k - 1, SourceSet::closed_form_only());
    const auto fewer = threshold_bounds(build_catalog(k, SourceSet::closed_form_only()), &km1);
    EXPECT_LE(full.hua_route.value, fewer.hua_route.value);
    EXPECT_LE(full.mixed_route->value, fewer.mixed_route->value);
  }
}

TEST(Hua, Moments) {
  const auto h4 = hua_moments(catalog(4));
  EXPECT_EQ(h4.full.value, Rational(26));
  EXPECT_EQ(h4.t_star.value, Rational(11));
  EXPECT_EQ(h4.penultimate.value, Rational(22));
  EXPECT_LE(hua_moments(catalog(8)).penultimate.value, Rational(88));
  EXPECT_EQ(hua_moments(catalog(9)).penultimate.value, Rational(114));
  for (int k = 3; k <= 16; ++k) {
    EXPECT_EQ(hua_moments(catalog(k)).full.value, Rational(2L * k * k - 2L * k + 2));
  }
}

TEST(Tarry, Bounds) {
  for (int k = 3; k <= 10; ++k) {
    const auto t = tarry_bound(catalog(k + 1));
    const long s = t.witness_at("s");
    EXPECT_EQ(t.value, Rational(s));
    EXPECT_GE(s, 1);
    EXPECT_LT(catalog(k + 1).delta(s), Rational(k + 1));
    if (s > 1) EXPECT_GE(catalog(k + 1).delta(s - 1), Rational(k + 1));
    EXPECT_LE(8 * s, 5L * (k + 1) * (k + 1) + 7);
  }
  EXPECT_LE(tarry_bound(catalog(4)).value, Rational(10));
  EXPECT_LE(tarry_bound(catalog(8)).value, Rational(40));
}

TEST(Constants, SixDigits) {
  const auto c = large_degree_constants(6);
  EXPECT_EQ(c.xi, "0.312383");
  EXPECT_EQ(c.C, "1.542749");
  EXPECT_LT(c.residual, Rational(1, 1000000));
  auto cubic = [](const Rational& x) { return Rational(20) * x * x * x + Rational(4) * x * x - Rational(1); };
  EXPECT_LT(cubic(c.xi_low).sign(), 0);
  EXPECT_GT(cubic(c.xi_high).sign(), 0);
  const auto fine = large_degree_constants(30);
  EXPECT_EQ(fine.xi.substr(0, 8), "0.312383");
  EXPECT_THROW(large_degree_constants(51), std::invalid_argument);
}
