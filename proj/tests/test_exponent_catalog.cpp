#include <gtest/gtest.h>

#include "oracles.hpp"
#include "vinotab/exponent_catalog.hpp"

using namespace vinotab;

TEST(ClosedForm, WorkedValues) {
  EXPECT_EQ(closed_form_exponent(5, 3, 18).value(), Rational(2, 7));
  EXPECT_EQ(closed_form_exponent(6, 3, 26).value(), Rational(1, 3));
  EXPECT_EQ(closed_form_exponent(7, 1, 43).value(), Rational(0));
}

TEST(ClosedForm, RejectsOutOfRange) {
  EXPECT_EQ(closed_form_exponent(5, 3, 17).reason(), Invalidity::SThreshold);
  EXPECT_EQ(closed_form_exponent(5, 4, 30).reason(), Invalidity::RRange);
  EXPECT_EQ(closed_form_exponent(6, 0, 40).reason(), Invalidity::RRange);
  // r = k - 1 is never admissible
  EXPECT_EQ(closed_form_exponent(3, 2, 10).reason(), Invalidity::RRange);
  EXPECT_EQ(closed_form_threshold(5, 3), 18);
}

TEST(NuStar, Values) {
  EXPECT_EQ(nu_star(5, 2, 19, Branch::Refined), Rational(95, 182));
  EXPECT_EQ(nu_star(4, 2, 11, Branch::Refined), Rational(13, 21));
  EXPECT_EQ(nu_star(9, 4, 60, Branch::Closed), Rational(0));
  EXPECT_THROW(nu_star(5, 3, 7, Branch::Refined), std::invalid_argument);
}

TEST(Refined, Values) {
  const auto a = refined_exponent(5, 3, 18);
  ASSERT_TRUE(a);
  EXPECT_EQ(a.value().delta, Rational(1375, 6006));
  EXPECT_EQ(a.value().nu, 0);
  const auto b = refined_exponent(4, 2, 12);
  ASSERT_TRUE(b);
  EXPECT_EQ(b.value().delta, Rational(1, 12));
  EXPECT_EQ(refined_exponent(5, 3, 17).reason(), Invalidity::NuExcess);
  for (long s = 6; s <= 21; ++s) {
    const auto r1 = refined_exponent(5, 1, s);
    if (r1) EXPECT_EQ(r1.value().delta, Rational(0)) << s;
  }
}

// The shift is chosen directly; stepping nu upward from the threshold must agree.
TEST(Refined, NuSelectionMatchesLoop) {
  for (int k = 3; k <= 14; ++k) {
    for (long r = 1; r <= max_r(k); ++r) {
      long loop = 0;
      const long threshold = closed_form_threshold(k, r);
      for (long nu = 0; nu <= k && threshold - nu >= k + r; ++nu) {
        if (nu_star(k, r, threshold - nu, Branch::Refined) >= Rational(nu)) loop = nu;
      }
      EXPECT_EQ(largest_nu_shift(k, r), loop) << "k=" << k << " r=" << r;
      for (long s = k + r; s <= zero_threshold(k); ++s) {
        const long nu = std::max(threshold - s, 0L);
        const bool admissible = Rational(nu) <= nu_star(k, r, s, Branch::Refined);
        EXPECT_EQ(static_cast<bool>(refined_exponent(k, r, s)), admissible) << k << " " << r << " " << s;
      }
    }
  }
}

TEST(PriorExponent, Values) {
  EXPECT_EQ(prior_exponent(4, 6), Rational(4));
  EXPECT_EQ(prior_exponent(6, 20), Rational(4));
  EXPECT_EQ(prior_exponent(5, 1), Rational(14));
  EXPECT_EQ(prior_exponent(6, 20, false), Rational(21));
}

TEST(Identities, SumOfProductsClosedForm) {
  for (int k = 3; k <= 40; ++k) {
    for (long r = 1; r <= k - 2; ++r) {
      long lhs = 0;
      for (long m = 1; m <= r; ++m) lhs += (m - 1) * (k - m - 1);
      EXPECT_EQ(6 * lhs, r * (r - 1) * (3L * k - 2 * r - 5));
    }
    for (long r = 1; r <= max_r(k); ++r) {
      for (long s = closed_form_threshold(k, r); s <= zero_threshold(k) + 5; ++s) {
        EXPECT_EQ(closed_form_exponent(k, r, s).value(), closed_branch_sum(k, r, s));
      }
    }
  }
}

TEST(Identities, TailBelowRSquaredOverK) {
  for (int k = 3; k <= 30; ++k) {
    for (long r = 1; r <= max_r(k); ++r) {
      // s >= (k - r/2)^2 + (r+3)^2/4, i.e. 4s >= (2k - r)^2 + (r + 3)^2
      const long four_s = (2L * k - r) * (2L * k - r) + (r + 3) * (r + 3);
      const long s0 = (four_s + 3) / 4;
      for (long s = s0; s <= s0 + 3L * k; ++s) {
        const auto d = closed_form_exponent(k, r, s);
        ASSERT_TRUE(d) << k << " " << r << " " << s;
        EXPECT_LT(d.value(), Rational(r * r, k)) << k << " " << r << " " << s;
      }
    }
  }
}

TEST(Identities, RefinedIncreasingInNu) {
  for (int k = 3; k <= 16; ++k) {
    for (long r = 2; r <= max_r(k); ++r) {
      for (long s = k + r; s <= zero_threshold(k); ++s) {
        const Rational budget = nu_star(k, r, s, Branch::Refined);
        for (long nu = 0; Rational(nu + 1) <= budget; ++nu) {
          EXPECT_LT(refined_exponent_at(k, r, s, nu), refined_exponent_at(k, r, s, nu + 1));
        }
      }
    }
  }
}

TEST(Catalog, WorkedValues) {
  const auto t4 = build_catalog(4);
  EXPECT_LE(t4.delta(11), Rational(1));
  EXPECT_LE(t4.delta(11), Rational(53, 72));
  EXPECT_EQ(t4.point(11).source.kind, SourceKind::Interpolated);
  EXPECT_EQ(build_catalog(5).delta(21), Rational(0));
  EXPECT_EQ(build_catalog(3).delta(1), Rational(5));
  EXPECT_EQ(build_catalog(5, SourceSet::closed_form_only()).delta(18), Rational(2, 7));
  EXPECT_EQ(build_catalog(5).delta(18), Rational(1375, 6006));
  EXPECT_THROW(build_catalog(2), std::invalid_argument);
}

TEST(Catalog, LeastS) {
  EXPECT_EQ(least_s_with_delta_at_most(build_catalog(4), Rational(1)), 11);
  EXPECT_EQ(least_s_with_delta_at_most(build_catalog(5), Rational(1)), 17);
  EXPECT_EQ(least_s_with_delta_at_most(build_catalog(6), Rational(0)), 31);
  EXPECT_THROW(least_s_with_delta_at_most(build_catalog(4), Rational(-1)), NotFound);
}

class CatalogVsOracle : public ::testing::TestWithParam<int> {};

TEST_P(CatalogVsOracle, AllSourceSets) {
  const int k = GetParam();
  for (bool square : {true, false}) {
    for (bool refined : {true, false}) {
      const SourceSet set{refined, square};
      const auto table = build_catalog(k, set);
      const auto expect = oracle::naive_catalog(k, square, refined);
      ASSERT_EQ(table.s_max(), static_cast<long>(expect.d.size()));
      for (long s = 1; s <= table.s_max(); ++s) {
        EXPECT_EQ(table.delta(s), expect.at(s)) << "k=" << k << " s=" << s << " set=" << set.fingerprint();
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(SmallDegrees, CatalogVsOracle, ::testing::Range(3, 11));

TEST(Catalog, ShapeAndFloor) {
  for (int k = 3; k <= 20; ++k) {
    const auto t = build_catalog(k);
    const long half = static_cast<long>(k) * (k + 1) / 2;
    EXPECT_EQ(t.s_max(), zero_threshold(k));
    EXPECT_EQ(t.delta(t.s_max()), Rational(0));
    EXPECT_EQ(t.delta(t.s_max() + 7), Rational(0));
    EXPECT_EQ(t.point(t.s_max() + 1).source.kind, SourceKind::ZeroTail);
    for (long s = 1; s <= t.s_max(); ++s) {
      EXPECT_GE(t.delta(s), max(Rational(0), Rational(half - s))) << k << " " << s;
      EXPECT_LE(t.delta(s), Rational(half));
      if (s > 1) EXPECT_LE(t.delta(s), t.delta(s - 1));
      if (s > 1 && s < t.s_max()) EXPECT_LE(Rational(2) * t.delta(s), t.delta(s - 1) + t.delta(s + 1));
      if (4 * s <= static_cast<long>(k + 1) * (k + 1)) EXPECT_EQ(t.delta(s), Rational(half - s));
      for (const auto& p : source_exponents(k, s, SourceSet::all())) EXPECT_LE(t.delta(s), p.delta);
      EXPECT_EQ(static_cast<double>(t.approx(s)), static_cast<double>(t.delta(s).to_long_double()));
    }
  }
}

TEST(Catalog, ProvenanceReproducesValue) {
  for (int k = 3; k <= 12; ++k) {
    const auto t = build_catalog(k);
    for (const auto& e : t.entries()) {
      const auto& p = e.source;
      switch (p.kind) {
        case SourceKind::Interpolated: {
          ASSERT_LT(p.first, e.s);
          ASSERT_GT(p.second, e.s);
          const Rational chord = (Rational(p.second - e.s) * t.delta(p.first) +
                                  Rational(e.s - p.first) * t.delta(p.second)) /
                                 Rational(p.second - p.first);
          EXPECT_EQ(chord, e.delta);
          break;
        }
        case SourceKind::MultigradeClosed:
          EXPECT_EQ(closed_form_exponent(k, p.first, e.s).value(), e.delta);
          break;
        case SourceKind::MultigradeNu: {
          const auto r = refined_exponent(k, p.first, e.s);
          ASSERT_TRUE(r);
          EXPECT_EQ(r.value().delta, e.delta);
          EXPECT_EQ(r.value().nu, p.second);
          break;
        }
        case SourceKind::SquareRule:
          EXPECT_EQ(Rational(p.first * p.first), e.delta);
          break;
        case SourceKind::Diagonal:
          EXPECT_EQ(Rational(static_cast<long>(k) * (k + 1) / 2 - e.s), e.delta);
          break;
        case SourceKind::Trivial:
          EXPECT_EQ(Rational(static_cast<long>(k) * (k + 1) / 2), e.delta);
          break;
        case SourceKind::ZeroTail:
          ADD_FAILURE() << "ZeroTail inside the table";
          break;
      }
    }
  }
}

TEST(Catalog, MoreSourcesNeverHurt) {
  for (int k = 3; k <= 14; ++k) {
    const auto all = build_catalog(k);
    for (const auto& set : {SourceSet::closed_form_only(), SourceSet::no_square_rule(), SourceSet{false, false}}) {
      const auto fewer = build_catalog(k, set);
      for (long s = 1; s <= all.s_max(); ++s) EXPECT_LE(all.delta(s), fewer.delta(s));
    }
  }
}

TEST(Catalog, Deterministic) {
  for (int k : {7, 15}) EXPECT_TRUE(build_catalog(k) == build_catalog(k));
}

TEST(SourceSetNames, RoundTrip) {
  for (const auto& set : {SourceSet::all(), SourceSet::closed_form_only(), SourceSet::no_square_rule(),
                          SourceSet{false, false}}) {
    EXPECT_EQ(SourceSet::parse(set.fingerprint()), set);
  }
  EXPECT_THROW(SourceSet::parse("odd-only"), std::invalid_argument);
}
