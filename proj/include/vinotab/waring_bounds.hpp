#pragma once

// Waring-problem thresholds derived from exponent catalogs.
//
// Two interpolation routes bound the number of variables needed for the
// asymptotic formula: mixing the minor-arc mean value of order 2t with Hua's
// lemma (moment 2^{j+1}), and mixing it with a lower moment 2v + w(w-1)
// controlled by the exponent Delta+_v. Both are optimized exactly.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vinotab/exponent_catalog.hpp"

namespace vinotab {

/// Result record for one derived bound.
struct BoundReport {
  int k = 0;
  std::string name;  // s1 | u1 | gtilde | gtilde_plus | hua_C | hua_S | tarry | t_star
  Rational value;
  bool integral = false;  // value is an integer bound rather than a rational threshold
  std::vector<std::pair<std::string, long>> witness;
  std::vector<std::pair<std::string, long>> search;  // bounds of the scanned region
  std::string anchor;  // the defining formula, for readers of the JSON output

  long witness_at(const std::string& key) const;
};

/// 2t - (1 - D_t)(2t - 2^{j+1}) / (k - j - D_t).
/// Requires 0 <= j <= k-2, 2^j < t and D_t < 1.
Rational hua_blend(int k, long t, int j, const Rational& delta_t);

/// Minimum of hua_blend over 1 <= t <= s_max with delta(t) < 1, 0 <= j <= k-2,
/// 2^j < t. Witness (t, j), smallest t then smallest j on ties. (label "s1")
BoundReport hua_route_bound(const ExponentTable& table);

/// How the two lower-moment exponents Delta_{v,k} - 1 and Delta_{v,k-1} combine
/// into Delta+_v. `Max` requires both estimates (the mean value bound is a sum of
/// a degree-k and a degree-(k-1) contribution); `Min` takes the better of the two.
enum class DeltaPlusRule { Max, Min };

/// The combined exponent, clamped below at 0.
Rational delta_plus(long v, const ExponentTable& table_k, const ExponentTable& table_km1,
                    DeltaPlusRule rule = DeltaPlusRule::Max);

/// 2t - (1 - D_t)(2t - 2v - w(w-1)) / (1 - D_t + D+_v / w).
/// Requires D_t < 1, 1 <= w <= k-1, 2v + w(w-1) < 2t, D+ >= 0.
Rational mixed_blend(int k, long t, long v, long w, const Rational& delta_t,
                     const Rational& delta_plus_v);

/// Minimum of mixed_blend over 1 <= t <= s_max with delta(t) < 1, 1 <= w <= k-1,
/// v >= 1, 2v + w(w-1) < 2t. Witness (t, v, w), lexicographically smallest on ties.
/// Needs the degree k-1 catalog, so k >= 4. (label "u1")
BoundReport mixed_route_bound(const ExponentTable& table_k, const ExponentTable& table_km1,
                              DeltaPlusRule rule = DeltaPlusRule::Max);

/// Same minimum by exhaustive exact enumeration of every (t, v, w).
/// Cubic in the table size; intended for cross-checking at small k.
BoundReport mixed_route_bound_exhaustive(const ExponentTable& table_k,
                                         const ExponentTable& table_km1,
                                         DeltaPlusRule rule = DeltaPlusRule::Max);

/// Asymptotic-formula thresholds floor(s1)+1 and floor(u1)+1, best of both.
/// Pass nullptr for the degree k-1 table to use the Hua route only (k = 3).
struct ThresholdBounds {
  BoundReport hua_route;                   // "s1"
  std::optional<BoundReport> mixed_route;  // "u1", absent without a degree k-1 table
  BoundReport gtilde;                      // "gtilde"
  BoundReport gtilde_plus;                 // "gtilde_plus"
};

ThresholdBounds threshold_bounds(const ExponentTable& table_k, const ExponentTable* table_km1);
ThresholdBounds threshold_bounds(int k);

/// C_k = 2 (least s with Delta = 0), t* = least s with Delta <= 1,
/// S_k = 2 max(t*, k^2 - 3k + 3).
struct HuaMoments {
  BoundReport full;         // "hua_C"
  BoundReport t_star;       // "t_star"
  BoundReport penultimate;  // "hua_S"
};

HuaMoments hua_moments(const ExponentTable& table);

/// Least s with Delta_{s,k+1} < k + 1, from the degree k+1 catalog.
BoundReport tarry_bound(const ExponentTable& table_kp1);

/// The real root xi of 20x^3 + 4x^2 - 1 and C = (19 + 75xi - 12xi^2)/(8 + 60xi).
struct LargeDegreeConstants {
  int digits = 0;
  Rational xi_low;   // bracketing interval from exact bisection
  Rational xi_high;
  std::string xi;    // truncated to `digits` places
  std::string C;     // truncated to `digits` places
  Rational residual; // |20x^3 + 4x^2 - 1| at the bracket midpoint
};

/// Bisection on [0, 1] with exact sign evaluation. 1 <= digits <= 50.
LargeDegreeConstants large_degree_constants(int digits);

}  // namespace vinotab
