#include "vinotab/waring_bounds.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace vinotab {

long BoundReport::witness_at(const std::string& key) const {
  for (const auto& [name, v] : witness) {
    if (name == key) return v;
  }
  throw std::out_of_range("BoundReport: no witness parameter '" + key + "'");
}

namespace {

// Candidates whose approximate value lies within this slack of the running
// approximate minimum are re-evaluated exactly. Long double round-off on these
// formulas is below 1e-14 for every table size the library builds.
long double slack_for(long double best) { return 1e-9L * (1.0L + std::abs(best)); }

long first_below_one(const ExponentTable& table) {
  const auto& e = table.entries();
  const auto it = std::partition_point(e.begin(), e.end(),
                                       [](const ExponentPoint& p) { return p.delta >= Rational(1); });
  if (it == e.end()) throw NotFound("no tabulated exponent below 1");
  return it->s;
}

}  // namespace

Rational hua_blend(int k, long t, int j, const Rational& delta_t) {
  if (j < 0 || j > k - 2) throw std::invalid_argument("hua_blend: j outside [0, k-2]");
  if (j >= 62 || (1L << j) >= t) throw std::invalid_argument("hua_blend: need 2^j < t");
  if (delta_t >= Rational(1)) throw std::invalid_argument("hua_blend: need delta_t < 1");
  const Rational two_t(2 * t);
  const Rational hua_moment(2L << j);
  return two_t - (Rational(1) - delta_t) * (two_t - hua_moment) / (Rational(k - j) - delta_t);
}

BoundReport hua_route_bound(const ExponentTable& table) {
  const int k = table.k();
  const long t_min = first_below_one(table);
  const long t_max = table.s_max();

  struct Candidate {
    long double approx;
    long t;
    int j;
  };
  std::vector<Candidate> near;
  long double best = std::numeric_limits<long double>::infinity();
  for (long t = t_min; t <= t_max; ++t) {
    const long double d = table.approx(t);
    for (int j = 0; j <= k - 2 && j < 62 && (1L << j) < t; ++j) {
      const long double two_t = 2.0L * static_cast<long double>(t);
      const long double value = two_t - (1.0L - d) * (two_t - static_cast<long double>(2L << j)) /
                                            (static_cast<long double>(k - j) - d);
      if (value <= best + slack_for(best)) near.push_back({value, t, j});
      best = std::min(best, value);
    }
  }

  BoundReport report;
  report.k = k;
  report.name = "s1";
  report.anchor = "min over t, j of 2t - (1 - D_t)(2t - 2^(j+1)) / (k - j - D_t), D_t < 1, 2^j < t";
  report.search = {{"t_min", t_min}, {"t_max", t_max}, {"j_max", k - 2}};
  bool have = false;
  for (const auto& c : near) {  // already in (t, j) order
    if (c.approx > best + slack_for(best)) continue;
    Rational exact = hua_blend(k, c.t, c.j, table.delta(c.t));
    if (!have || exact < report.value) {
      report.value = std::move(exact);
      report.witness = {{"t", c.t}, {"j", c.j}};
      have = true;
    }
  }
  return report;
}

Rational delta_plus(long v, const ExponentTable& table_k, const ExponentTable& table_km1,
                    DeltaPlusRule rule) {
  if (v < 1) throw std::invalid_argument("delta_plus: v must be positive");
  const Rational lowered = table_k.delta(v) - Rational(1);
  const Rational& previous = table_km1.delta(v);
  const Rational combined = rule == DeltaPlusRule::Max ? max(lowered, previous) : min(lowered, previous);
  return max(combined, Rational(0));
}

Rational mixed_blend(int k, long t, long v, long w, const Rational& delta_t,
                     const Rational& delta_plus_v) {
  if (delta_t >= Rational(1)) throw std::invalid_argument("mixed_blend: need delta_t < 1");
  if (w < 1 || w > k - 1) throw std::invalid_argument("mixed_blend: w outside [1, k-1]");
  if (v < 1) throw std::invalid_argument("mixed_blend: v must be positive");
  const long low_moment = 2 * v + w * (w - 1);
  if (low_moment >= 2 * t) throw std::invalid_argument("mixed_blend: need 2v + w(w-1) < 2t");
  if (delta_plus_v.sign() < 0) throw std::invalid_argument("mixed_blend: need delta_plus >= 0");
  const Rational two_t(2 * t);
  const Rational slack = Rational(1) - delta_t;
  return two_t - slack * (two_t - Rational(low_moment)) / (slack + delta_plus_v / Rational(w));
}

namespace {

BoundReport mixed_report_shell(const ExponentTable& table_k, const ExponentTable& table_km1,
                               long t_min, DeltaPlusRule rule) {
  if (table_km1.k() != table_k.k() - 1)
    throw std::invalid_argument("mixed route: tables must have degrees k and k-1");
  BoundReport report;
  report.k = table_k.k();
  report.name = "u1";
  report.anchor =
      "min over t, v, w of 2t - (1 - D_t)(2t - 2v - w(w-1)) / (1 - D_t + D+_v / w), D_t < 1, "
      "2v + w(w-1) < 2t";
  report.search = {{"t_min", t_min},
                   {"t_max", table_k.s_max()},
                   {"v_max", table_k.s_max() - 1},
                   {"w_max", table_k.k() - 1},
                   {"delta_plus_max_rule", rule == DeltaPlusRule::Max ? 1 : 0}};
  return report;
}

}  // namespace

// For fixed (v, w) the blend is a linear-fractional function of 1 - D_t, and
// D_t is affine in t between consecutive corners of the catalog envelope. The
// blend is therefore monotone on each envelope segment, so its minimum over t
// (and the smallest t attaining it) sits at a segment end: a corner of the
// envelope or the least admissible t. Only those t are scanned. The bound
// u0 >= 2v + w(w-1) (a weighted mean of that moment and 2t) prunes the v loop.
BoundReport mixed_route_bound(const ExponentTable& table_k, const ExponentTable& table_km1,
                              DeltaPlusRule rule) {
  const int k = table_k.k();
  const long t_min = first_below_one(table_k);
  const long t_max = table_k.s_max();
  BoundReport report = mixed_report_shell(table_k, table_km1, t_min, rule);

  std::vector<long> corners;
  for (long t : table_k.vertices()) {
    if (t > t_min) corners.push_back(t);
  }

  std::vector<long double> dplus(static_cast<std::size_t>(t_max) + 1, 0.0L);
  for (long v = 1; v <= t_max; ++v) {
    const long double lowered = table_k.approx(v) - 1.0L;
    const long double previous = table_km1.approx(v);
    dplus[static_cast<std::size_t>(v)] = std::max(
        0.0L, rule == DeltaPlusRule::Max ? std::max(lowered, previous) : std::min(lowered, previous));
  }

  struct Candidate {
    long double approx;
    long t, v, w;
  };
  std::vector<Candidate> near;
  long double best = std::numeric_limits<long double>::infinity();
  auto consider = [&](long t, long v, long w, long double d, long double moment) {
    const long double y = 1.0L - table_k.approx(t);
    const long double value = (2.0L * static_cast<long double>(t) * d + y * moment) / (y + d);
    if (value <= best + slack_for(best)) near.push_back({value, t, v, w});
    best = std::min(best, value);
  };

  for (long w = 1; w <= k - 1; ++w) {
    for (long v = 1;; ++v) {
      const long moment = 2 * v + w * (w - 1);
      if (moment >= 2 * t_max) break;
      const auto moment_ld = static_cast<long double>(moment);
      if (moment_ld > best + slack_for(best)) break;
      const long double d = dplus[static_cast<std::size_t>(v)] / static_cast<long double>(w);
      const long t_lo = std::max(t_min, moment / 2 + 1);
      consider(t_lo, v, w, d, moment_ld);
      for (auto it = std::upper_bound(corners.begin(), corners.end(), t_lo); it != corners.end();
           ++it) {
        consider(*it, v, w, d, moment_ld);
      }
    }
  }

  std::vector<Candidate> finalists;
  for (const auto& c : near) {
    if (c.approx <= best + slack_for(best)) finalists.push_back(c);
  }
  std::sort(finalists.begin(), finalists.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.t, a.v, a.w) < std::tie(b.t, b.v, b.w);
  });
  bool have = false;
  for (const auto& c : finalists) {
    Rational exact = mixed_blend(k, c.t, c.v, c.w, table_k.delta(c.t),
                                 delta_plus(c.v, table_k, table_km1, rule));
    if (!have || exact < report.value) {
      report.value = std::move(exact);
      report.witness = {{"t", c.t}, {"v", c.v}, {"w", c.w}};
      have = true;
    }
  }
  return report;
}

BoundReport mixed_route_bound_exhaustive(const ExponentTable& table_k,
                                         const ExponentTable& table_km1, DeltaPlusRule rule) {
  const int k = table_k.k();
  const long t_min = first_below_one(table_k);
  BoundReport report = mixed_report_shell(table_k, table_km1, t_min, rule);
  bool have = false;
  for (long t = t_min; t <= table_k.s_max(); ++t) {
    for (long v = 1; 2 * v < 2 * t; ++v) {
      const Rational dp = delta_plus(v, table_k, table_km1, rule);
      for (long w = 1; w <= k - 1 && 2 * v + w * (w - 1) < 2 * t; ++w) {
        Rational value = mixed_blend(k, t, v, w, table_k.delta(t), dp);
        if (!have || value < report.value) {
          report.value = std::move(value);
          report.witness = {{"t", t}, {"v", v}, {"w", w}};
          have = true;
        }
      }
    }
  }
  return report;
}

ThresholdBounds threshold_bounds(const ExponentTable& table_k, const ExponentTable* table_km1) {
  const int k = table_k.k();
  ThresholdBounds out{hua_route_bound(table_k), std::nullopt, {}, {}};
  if (table_km1 != nullptr) out.mixed_route = mixed_route_bound(table_k, *table_km1);

  const BigInt s_route = out.hua_route.value.floor() + 1;
  BigInt best = s_route;
  BigInt half = (out.hua_route.value / Rational(2)).floor();
  out.gtilde.witness.emplace_back("s_route", s_route.get_si());
  if (out.mixed_route) {
    const BigInt u_route = out.mixed_route->value.floor() + 1;
    out.gtilde.witness.emplace_back("u_route", u_route.get_si());
    best = std::min(best, u_route);
    half = std::min(half, BigInt((out.mixed_route->value / Rational(2)).floor()));
  }
  out.gtilde.k = k;
  out.gtilde.name = "gtilde";
  out.gtilde.value = Rational(best);
  out.gtilde.integral = true;
  out.gtilde.anchor = "min(floor(s1) + 1, floor(u1) + 1)";

  out.gtilde_plus.k = k;
  out.gtilde_plus.name = "gtilde_plus";
  out.gtilde_plus.value = Rational(half + 1);
  out.gtilde_plus.integral = true;
  out.gtilde_plus.witness = {{"half_floor", half.get_si()}};
  out.gtilde_plus.anchor = "1 + min(floor(s1 / 2), floor(u1 / 2))";
  return out;
}

ThresholdBounds threshold_bounds(int k) {
  const ExponentTable table_k = build_catalog(k);
  if (k < 4) return threshold_bounds(table_k, nullptr);
  const ExponentTable table_km1 = build_catalog(k - 1);
  return threshold_bounds(table_k, &table_km1);
}

HuaMoments hua_moments(const ExponentTable& table) {
  const int k = table.k();
  const long zero_at = least_s_with_delta_at_most(table, Rational(0));
  const long t_star = least_s_with_delta_at_most(table, Rational(1));
  const long floor_t = static_cast<long>(k) * k - 3L * k + 3;

  HuaMoments out;
  out.full.k = k;
  out.full.name = "hua_C";
  out.full.value = Rational(2 * zero_at);
  out.full.integral = true;
  out.full.witness = {{"s", zero_at}};
  out.full.anchor = "2 * (least s with Delta_{s,k} = 0)";

  out.t_star.k = k;
  out.t_star.name = "t_star";
  out.t_star.value = Rational(t_star);
  out.t_star.integral = true;
  out.t_star.witness = {{"t", t_star}};
  out.t_star.anchor = "least t with Delta_{t,k} <= 1";

  out.penultimate.k = k;
  out.penultimate.name = "hua_S";
  out.penultimate.value = Rational(2 * std::max(t_star, floor_t));
  out.penultimate.integral = true;
  out.penultimate.witness = {{"t_star", t_star}, {"k2_minus_3k_plus_3", floor_t}};
  out.penultimate.anchor = "2 * max(t*, k^2 - 3k + 3)";
  return out;
}

BoundReport tarry_bound(const ExponentTable& table_kp1) {
  const int k = table_kp1.k() - 1;
  const Rational limit(k + 1);
  const auto& e = table_kp1.entries();
  const auto it = std::partition_point(e.begin(), e.end(),
                                       [&](const ExponentPoint& p) { return p.delta >= limit; });
  if (it == e.end()) throw NotFound("no exponent below k + 1");
  BoundReport report;
  report.k = k;
  report.name = "tarry";
  report.value = Rational(it->s);
  report.integral = true;
  report.witness = {{"s", it->s}};
  report.search = {{"degree", k + 1}, {"s_max", table_kp1.s_max()}};
  report.anchor = "least s with Delta_{s,k+1} < k + 1";
  return report;
}

namespace {

Rational cubic(const Rational& x) {
  return Rational(20) * x * x * x + Rational(4) * x * x - Rational(1);
}

Rational large_degree_c(const Rational& x) {
  return (Rational(19) + Rational(75) * x - Rational(12) * x * x) / (Rational(8) + Rational(60) * x);
}

}  // namespace

LargeDegreeConstants large_degree_constants(int digits) {
  if (digits < 1 || digits > 50)
    throw std::invalid_argument("large_degree_constants: digits must lie in [1, 50]");
  Rational lo(0);
  Rational hi(1);
  const Rational width = Rational(BigInt(1), pow(BigInt(10), static_cast<unsigned long>(digits + 8)));
  const Rational floor_width =
      Rational(BigInt(1), pow(BigInt(10), static_cast<unsigned long>(digits + 60)));
  auto settled = [&] {
    return lo.decimal_trunc(digits) == hi.decimal_trunc(digits) &&
           large_degree_c(lo).decimal_trunc(digits) == large_degree_c(hi).decimal_trunc(digits);
  };
  while (hi - lo > width || (!settled() && hi - lo > floor_width)) {
    const Rational mid = (lo + hi) / Rational(2);
    if (cubic(mid).sign() <= 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const Rational mid = (lo + hi) / Rational(2);
  LargeDegreeConstants out;
  out.digits = digits;
  out.xi_low = lo;
  out.xi_high = hi;
  out.xi = mid.decimal_trunc(digits);
  out.C = large_degree_c(mid).decimal_trunc(digits);
  const Rational r = cubic(mid);
  out.residual = r.sign() < 0 ? -r : r;
  return out;
}

}  // namespace vinotab
