#pragma once

// Permissible exponents for the Vinogradov mean value J_{s,k}(X).
//
// A value D is a permissible exponent for (s, k) when
//     J_{s,k}(X) << X^{2s - k(k+1)/2 + D + eps}.
// The catalog collects every exponent the source families below can certify,
// closes the point set under Hoelder interpolation (lower convex envelope) and
// exposes the result as an immutable table indexed by s.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vinotab/rational.hpp"

namespace vinotab {

/// Why a source formula does not apply at the requested parameters.
enum class Invalidity {
  RRange,      // r outside 1 <= r <= min(k-2, (k+1)/2)
  SThreshold,  // s below the closed-form threshold, or too small for the denominators
  NuExcess,    // the shift nu exceeds the nu* budget
};

std::string_view to_string(Invalidity why);

/// Either a value or the reason the formula is inadmissible.
template <class T>
class Checked {
 public:
  Checked(T value) : v_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  Checked(Invalidity why) : v_(why) {}        // NOLINT(google-explicit-constructor)

  explicit operator bool() const { return std::holds_alternative<T>(v_); }
  bool valid() const { return std::holds_alternative<T>(v_); }

  const T& value() const {
    if (!valid()) throw std::logic_error("Checked::value on invalid result: " +
                                         std::string(to_string(reason())));
    return std::get<T>(v_);
  }
  Invalidity reason() const {
    if (valid()) throw std::logic_error("Checked::reason on valid result");
    return std::get<Invalidity>(v_);
  }

 private:
  std::variant<T, Invalidity> v_;
};

/// Branch of the multigrade exponent family: `Refined` carries the nu*
/// correction term, `Closed` is the simpler closed form (nu* = 0).
enum class Branch { Refined = 0, Closed = 1 };

enum class SourceKind {
  Trivial,           // k(k+1)/2, always available
  Diagonal,          // k(k+1)/2 - s in the diagonal range
  SquareRule,        // m^2 when 2m <= k and s >= (k-m)^2 + (k-m)
  MultigradeClosed,  // closed form, parameter r
  MultigradeNu,      // refined form, parameters r and nu
  Interpolated,      // chord between two catalog points s1 < s < s2
  ZeroTail,          // s beyond k^2 - k + 1
};

std::string_view to_string(SourceKind kind);

/// Which rule produced an exponent. Parameter meaning depends on the kind:
/// SquareRule(m), MultigradeClosed(r), MultigradeNu(r, nu), Interpolated(s1, s2).
struct Provenance {
  SourceKind kind = SourceKind::Trivial;
  long first = 0;
  long second = 0;

  static Provenance trivial() { return {SourceKind::Trivial, 0, 0}; }
  static Provenance diagonal() { return {SourceKind::Diagonal, 0, 0}; }
  static Provenance square_rule(long m) { return {SourceKind::SquareRule, m, 0}; }
  static Provenance closed(long r) { return {SourceKind::MultigradeClosed, r, 0}; }
  static Provenance refined(long r, long nu) { return {SourceKind::MultigradeNu, r, nu}; }
  static Provenance interpolated(long s1, long s2) { return {SourceKind::Interpolated, s1, s2}; }
  static Provenance zero_tail() { return {SourceKind::ZeroTail, 0, 0}; }

  /// e.g. "MultigradeNu(r=3,nu=0)".
  std::string str() const;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct ExponentPoint {
  long s = 0;
  Rational delta;
  Provenance source;

  friend bool operator==(const ExponentPoint&, const ExponentPoint&) = default;
};

/// Source families admitted into a catalog build.
struct SourceSet {
  bool refined_branch = true;  // cleared by "closed-form-only"
  bool square_rule = true;     // cleared by "no-square-rule"

  static SourceSet all() { return {}; }
  static SourceSet closed_form_only() { return {false, true}; }
  static SourceSet no_square_rule() { return {true, false}; }

  /// Accepts "all", "closed-form-only", "no-square-rule", or a '+'-joined combination.
  static SourceSet parse(std::string_view text);
  /// Canonical name, stable across runs; used as a cache key component.
  std::string fingerprint() const;

  friend bool operator==(const SourceSet&, const SourceSet&) = default;
};

/// Largest admissible r for degree k: min(k-2, floor((k+1)/2)).
long max_r(int k);

/// k^2 - k + 1: from here on the exponent 0 is permissible.
long zero_threshold(int k);

/// k^2 - rk + r(r+3)/2 - 1.
long closed_form_threshold(int k, long r);

/// r(r-1)(3k-2r-5) / (6(s-k+1)), admissible for s >= closed_form_threshold(k, r).
Checked<Rational> closed_form_exponent(int k, long r, long s);

/// nu*(r, s): sum_{m<=r} m(k-m-1)/(s-k-m+1) on the refined branch, 0 on the closed branch.
/// Throws std::invalid_argument when s < k + r.
Rational nu_star(int k, long r, long s, Branch branch);

/// Refined exponent with an explicit integer shift nu (0 <= nu):
///   sum_{m<=r} (m-1)(k-m-1)/(s-k-m+1) - (nu*(r,s) - nu)(r-1)/(s-k+1).
/// Exposed so the monotonicity in nu can be checked; no admissibility test on nu.
Rational refined_exponent_at(int k, long r, long s, long nu);

/// Closed-branch counterpart: sum_{m<=r} (m-1)(k-m-1) / (s-k+1).
Rational closed_branch_sum(int k, long r, long s);

struct ShiftedExponent {
  Rational delta;
  long nu = 0;
};

/// Refined exponent with nu = max(closed_form_threshold - s, 0); admissible iff nu <= nu*(r, s).
Checked<ShiftedExponent> refined_exponent(int k, long r, long s);

/// Largest nu in [0, k] with nu*(r, threshold - nu) >= nu, found by stepping nu upward.
long largest_nu_shift(int k, long r);

/// Minimum over the trivial bound, the diagonal range and the square rule.
Rational prior_exponent(int k, long s, bool square_rule = true);

/// Every admissible source value at s (exact), in a fixed enumeration order:
/// Trivial, Diagonal, SquareRule(m ascending), MultigradeClosed(r ascending),
/// MultigradeNu(r ascending).
std::vector<ExponentPoint> source_exponents(int k, long s, const SourceSet& sources);

/// Immutable catalog s -> Delta_{s,k} for s = 1 .. k^2-k+1.
class ExponentTable {
 public:
  ExponentTable(int k, SourceSet sources, std::vector<ExponentPoint> entries);

  int k() const { return k_; }
  long s_max() const { return static_cast<long>(entries_.size()); }
  const SourceSet& sources() const { return sources_; }
  const std::vector<ExponentPoint>& entries() const { return entries_; }

  /// Exponent at s >= 1; zero beyond s_max.
  const Rational& delta(long s) const;
  /// Point at s >= 1; ZeroTail beyond s_max.
  ExponentPoint point(long s) const;
  /// Nearest long double to delta(s), cached at construction.
  long double approx(long s) const;

  /// Points whose provenance is not Interpolated (the envelope's corners), ascending.
  std::vector<long> vertices() const;

  friend bool operator==(const ExponentTable& a, const ExponentTable& b) {
    return a.k_ == b.k_ && a.sources_ == b.sources_ && a.entries_ == b.entries_;
  }

 private:
  int k_;
  SourceSet sources_;
  std::vector<ExponentPoint> entries_;
  std::vector<long double> approx_;
};

/// Builds the catalog for degree k >= 3 (throws std::invalid_argument below 3).
ExponentTable build_catalog(int k, const SourceSet& sources = SourceSet::all());

/// Thrown when no tabulated s meets a bound.
class NotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Smallest s with table.delta(s) <= bound.
long least_s_with_delta_at_most(const ExponentTable& table, const Rational& bound);

}  // namespace vinotab
