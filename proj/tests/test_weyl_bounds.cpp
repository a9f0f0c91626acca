#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "vinotab/weyl_bounds.hpp"

using namespace vinotab;

TEST(WeylDirect, Values) {
  EXPECT_EQ(weyl_direct(4).sigma_inverse, 14);
  EXPECT_EQ(weyl_direct(4).tau_inverse, 28);
  EXPECT_EQ(weyl_direct(6).sigma_inverse, 42);
  EXPECT_EQ(weyl_direct(6).tau_inverse, 84);
  EXPECT_EQ(weyl_direct(7).sigma_inverse, 62);
  EXPECT_LT(weyl_direct(7).sigma_inverse, 64);
  EXPECT_THROW(weyl_direct(3), std::invalid_argument);
  for (int k = 4; k <= 200; ++k) {
    const auto d = weyl_direct(k);
    EXPECT_EQ(d.sigma_inverse, 2L * (k * k - 3 * k + 3));
    EXPECT_EQ(d.tau_inverse, 2 * d.sigma_inverse);
  }
}

TEST(SigmaBw, MatchesScan) {
  for (int k = 4; k <= 14; ++k) {
    const auto tkm1 = build_catalog(k - 1);
    oracle::Exponents e{k - 1, {}};
    for (long s = 1; s <= tkm1.s_max(); ++s) e.d.push_back(tkm1.delta(s));
    const auto expect = oracle::naive_sigma_bw(k, e);
    const auto got = sigma_bw(k, tkm1);
    ASSERT_TRUE(got.sigma_bw);
    EXPECT_EQ(*got.sigma_bw, expect.value) << k;
    EXPECT_EQ(got.sigma, expect.value);
    EXPECT_EQ(got.sigma_bw_argmax, expect.witness[0]) << k;
    EXPECT_GT(got.sigma.sign(), 0);
  }
}

TEST(SigmaBw, BeatsDirectAndStaysInBand) {
  const double table[] = {39.023,  58.093,  80.867,  107.396, 137.763, 172.027, 210.222, 252.370,
                          298.487, 348.580, 402.655, 460.718, 522.771, 588.815, 658.854};
  for (int k = 6; k <= 20; ++k) {
    const auto r = sigma_bw(k, build_catalog(k - 1));
    EXPECT_LT(r.sigma_inverse(), Rational(r.sigma_inverse_direct)) << k;
    const double ratio = static_cast<double>(r.sigma_inverse().to_long_double()) / table[k - 6];
    EXPECT_NEAR(ratio, 1.0, 0.03) << k;
  }
  EXPECT_THROW(sigma_bw(5, build_catalog(3)), std::invalid_argument);
}

TEST(SigmaBw, DominatedPointsDoNotMatter) {
  // Dropping the square rule only removes points the envelope never uses at these degrees.
  for (int k = 6; k <= 10; ++k) {
    const auto full = build_catalog(k - 1);
    const auto fewer = build_catalog(k - 1, SourceSet::no_square_rule());
    bool same = true;
    for (long s = 1; s <= full.s_max(); ++s) same = same && full.delta(s) == fewer.delta(s);
    if (same) EXPECT_EQ(*sigma_bw(k, full).sigma_bw, *sigma_bw(k, fewer).sigma_bw);
  }
}

TEST(MuNu, ClosedFormSpotChecks) {
  EXPECT_EQ(mu_nu_exponents(10, 3, 80, 91, Rational(0), Rational(0)).mu, Rational(1, 160));
  EXPECT_EQ(mu_nu_exponents(10, 3, 80, 91, Rational(0), Rational(0)).nu, Rational(7, 1820));
  const auto t9 = build_catalog(9);
  const auto t10 = build_catalog(10);
  const auto pin = mu_nu_exponents(10, 2, 73, 91, t9, t10);
  EXPECT_EQ(pin.mu, Rational(1, 146));
  EXPECT_EQ(pin.nu, Rational(2, 455));
  EXPECT_TRUE(pin.useful());
  const auto useless = mu_nu_exponents(10, 5, 73, 91, Rational(0), Rational(1));
  EXPECT_LE(useless.nu.sign(), 0);
  EXPECT_FALSE(useless.useful());
  EXPECT_THROW(mu_nu_exponents(10, 6, 73, 91, t9, t10), std::invalid_argument);
  EXPECT_THROW(mu_nu_exponents(10, 2, 44, 91, t9, t10), std::invalid_argument);
  EXPECT_THROW(mu_nu_exponents(10, 2, 73, 0, t9, t10), std::invalid_argument);
}

TEST(LargeK, Degree200) {
  const auto r = weyl_large_k(200);
  EXPECT_LT(r.sigma_inverse(), Rational(2L * 200 * 200 - 6 * 200 + 6));
  ASSERT_TRUE(r.mu && r.nu);
  EXPECT_EQ(r.sigma, min(*r.mu, *r.nu));
  auto w = [&r](const std::string& key) {
    for (const auto& [name, v] : r.witness)
      if (name == key) return v;
    ADD_FAILURE() << "missing witness " << key;
    return 0L;
  };
  const auto again = mu_nu_exponents(200, w("R"), w("s"), w("t"), closed_form_exponent(199, w("r"), w("s")).value(),
                                     closed_form_exponent(200, w("u"), w("t")).value());
  EXPECT_EQ(again.exponent(), r.sigma);
  const double gap = std::fabs(static_cast<double>(((*r.mu - *r.nu) / *r.mu).to_long_double()));
  EXPECT_LT(gap, 0.2);
}

TEST(LargeK, Asymptotic) {
  const long k = 10000;
  const auto r = weyl_large_k(static_cast<int>(k));
  const double inv = static_cast<double>(r.sigma_inverse().to_long_double());
  const double scaled = (2.0 * k * k - inv) / std::pow(static_cast<double>(k), 1.5);
  EXPECT_GE(scaled, 0.35);
  EXPECT_LE(scaled, 0.75);
  EXPECT_THROW(weyl_large_k(8), std::invalid_argument);
}

TEST(LargeK, CatalogsOnlyHelp) {
  for (int k : {9, 12, 20}) {
    const auto tkm1 = build_catalog(k - 1);
    const auto tk = build_catalog(k);
    EXPECT_GE(weyl_large_k(k, &tkm1, &tk).sigma, weyl_large_k(k).sigma) << k;
  }
}
