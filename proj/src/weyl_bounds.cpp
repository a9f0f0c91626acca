#include "vinotab/weyl_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vinotab {

DirectWeyl weyl_direct(int k) {
  if (k < 4) throw std::invalid_argument("weyl_direct: k must be at least 4");
  const long base = static_cast<long>(k) * k - 3L * k + 3;
  return {2 * base, 4 * base};
}

WeylReport sigma_bw(int k, const ExponentTable& table_km1) {
  if (k < 4) throw std::invalid_argument("sigma_bw: k must be at least 4");
  if (table_km1.k() != k - 1) throw std::invalid_argument("sigma_bw: need the degree k-1 catalog");
  const long s_hi = 2L * k * k;
  // Past the zero threshold the ratio is 3/(6s+2), strictly decreasing, so the
  // window [k, 2k^2] contains the maximum as long as it reaches that threshold.
  if (table_km1.s_max() > s_hi) throw std::logic_error("sigma_bw: search window misses the zero tail");

  const DirectWeyl direct = weyl_direct(k);
  WeylReport report;
  report.k = k;
  report.sigma_inverse_direct = direct.sigma_inverse;
  report.tau_inverse = direct.tau_inverse;
  Rational best;
  long argmax = 0;
  for (long s = k; s <= s_hi; ++s) {
    const Rational& d = table_km1.delta(s);
    if (d >= Rational(3)) continue;
    Rational value = (Rational(3) - d) / Rational(6 * s + 2);
    if (argmax == 0 || value > best) {
      best = std::move(value);
      argmax = s;
    }
  }
  report.sigma_bw = best;
  report.sigma_bw_argmax = argmax;
  report.sigma = best;
  report.witness = {{"s", argmax}};
  report.search = {{"s_min", k}, {"s_max", s_hi}};
  report.anchor = "max over s >= k of (3 - Delta_{s,k-1}) / (6s + 2)";
  return report;
}

namespace {

void check_mu_nu_args(int k, long R, long s, long t) {
  if (R < 1 || 2 * R > k) throw std::invalid_argument("mu_nu_exponents: R outside [1, k/2]");
  if (2 * s < static_cast<long>(k) * (k - 1))
    throw std::invalid_argument("mu_nu_exponents: s below k(k-1)/2");
  if (t < 1) throw std::invalid_argument("mu_nu_exponents: t must be positive");
}

}  // namespace

MuNu mu_nu_exponents(int k, long R, long s, long t, const Rational& delta_s_km1,
                     const Rational& delta_t_k) {
  check_mu_nu_args(k, R, s, t);
  MuNu out;
  out.mu = (Rational(R) - delta_s_km1) / Rational(2 * R * s);
  out.nu = (Rational(k) - Rational(R) * (Rational(1) + delta_t_k)) / Rational(2 * t * k);
  return out;
}

MuNu mu_nu_exponents(int k, long R, long s, long t, const ExponentTable& table_km1,
                     const ExponentTable& table_k) {
  if (table_km1.k() != k - 1 || table_k.k() != k)
    throw std::invalid_argument("mu_nu_exponents: catalog degrees must be k-1 and k");
  check_mu_nu_args(k, R, s, t);
  return mu_nu_exponents(k, R, s, t, table_km1.delta(s), table_k.delta(t));
}

namespace {

struct FamilyPoint {
  long param = 0;  // r or u
  long moment = 0;  // s or t
  Rational delta;
  long double approx = 0;
};

// Closed-form points s = d^2 - rd + r(r+3)/2 - 1 for degree d, optionally
// improved by a catalog of that degree.
std::vector<FamilyPoint> family(int d, long min_moment, const ExponentTable* table) {
  std::vector<FamilyPoint> out;
  for (long r = 1; r <= max_r(d); ++r) {
    const long s = closed_form_threshold(d, r);
    if (s < min_moment) continue;
    Rational delta = closed_form_exponent(d, r, s).value();
    if (table != nullptr) delta = min(delta, table->delta(s));
    const long double approx = delta.to_long_double();
    out.push_back({r, s, std::move(delta), approx});
  }
  return out;
}

long double slack_for(long double x) { return 1e-9L * std::abs(x); }

}  // namespace

// For each R the best r (for mu) and best u (for nu) are independent, so
// the scan is O(k) per R. Near-optimal choices are confirmed exactly.
WeylReport weyl_large_k(int k, const ExponentTable* table_km1, const ExponentTable* table_k) {
  if (k < 9) throw std::invalid_argument("weyl_large_k: k must be at least 9");
  if (table_km1 != nullptr && table_km1->k() != k - 1)
    throw std::invalid_argument("weyl_large_k: degree k-1 catalog expected");
  if (table_k != nullptr && table_k->k() != k)
    throw std::invalid_argument("weyl_large_k: degree k catalog expected");

  const long half_kk = static_cast<long>(k) * (k - 1);
  const std::vector<FamilyPoint> s_points = family(k - 1, (half_kk + 1) / 2, table_km1);
  const std::vector<FamilyPoint> t_points = family(k, 1, table_k);
  if (s_points.empty() || t_points.empty()) throw NotFound("weyl_large_k: empty parameter family");

  const long R_max = k / 2;
  const auto kd = static_cast<long double>(k);
  auto mu_approx = [&](long R, const FamilyPoint& p) {
    const auto Rd = static_cast<long double>(R);
    return (Rd - p.approx) / (2.0L * Rd * static_cast<long double>(p.moment));
  };
  auto nu_approx = [&](long R, const FamilyPoint& p) {
    const auto Rd = static_cast<long double>(R);
    return (kd - Rd * (1.0L + p.approx)) / (2.0L * static_cast<long double>(p.moment) * kd);
  };

  std::vector<long double> best_mu(static_cast<std::size_t>(R_max) + 1);
  std::vector<long double> best_nu(static_cast<std::size_t>(R_max) + 1);
  long double best = -std::numeric_limits<long double>::infinity();
  for (long R = 1; R <= R_max; ++R) {
    long double m = -std::numeric_limits<long double>::infinity();
    for (const auto& p : s_points) m = std::max(m, mu_approx(R, p));
    long double n = -std::numeric_limits<long double>::infinity();
    for (const auto& p : t_points) n = std::max(n, nu_approx(R, p));
    best_mu[static_cast<std::size_t>(R)] = m;
    best_nu[static_cast<std::size_t>(R)] = n;
    best = std::max(best, std::min(m, n));
  }

  WeylReport report;
  report.k = k;
  const DirectWeyl direct = weyl_direct(k);
  report.sigma_inverse_direct = direct.sigma_inverse;
  report.tau_inverse = direct.tau_inverse;
  report.anchor =
      "max over R, r, u of min(mu, nu), mu = (R - Delta_{s,k-1})/(2Rs), "
      "nu = (k - R(1 + Delta_{t,k}))/(2tk)";
  report.search = {{"R_min", 1},
                   {"R_max", R_max},
                   {"r_min", s_points.front().param},
                   {"r_max", s_points.back().param},
                   {"u_min", t_points.front().param},
                   {"u_max", t_points.back().param},
                   {"catalog_k_minus_1", table_km1 != nullptr ? 1 : 0},
                   {"catalog_k", table_k != nullptr ? 1 : 0}};

  bool have = false;
  for (long R = 1; R <= R_max; ++R) {
    const auto iR = static_cast<std::size_t>(R);
    if (std::min(best_mu[iR], best_nu[iR]) < best - slack_for(best)) continue;
    // Exact best mu and nu for this R, smallest parameter on ties.
    const FamilyPoint* s_best = nullptr;
    Rational mu;
    for (const auto& p : s_points) {
      if (mu_approx(R, p) < best_mu[iR] - slack_for(best_mu[iR])) continue;
      Rational value = (Rational(R) - p.delta) / Rational(2 * R * p.moment);
      if (s_best == nullptr || value > mu) {
        mu = std::move(value);
        s_best = &p;
      }
    }
    const FamilyPoint* t_best = nullptr;
    Rational nu;
    for (const auto& p : t_points) {
      if (nu_approx(R, p) < best_nu[iR] - slack_for(best_nu[iR])) continue;
      Rational value =
          (Rational(k) - Rational(R) * (Rational(1) + p.delta)) / Rational(2 * p.moment * k);
      if (t_best == nullptr || value > nu) {
        nu = std::move(value);
        t_best = &p;
      }
    }
    Rational value = min(mu, nu);
    if (!have || value > report.sigma) {
      report.sigma = value;
      report.mu = mu;
      report.nu = nu;
      report.witness = {{"R", R},
                        {"r", s_best->param},
                        {"s", s_best->moment},
                        {"u", t_best->param},
                        {"t", t_best->moment}};
      have = true;
    }
  }
  return report;
}

}  // namespace vinotab
