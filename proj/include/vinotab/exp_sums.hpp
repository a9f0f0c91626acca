#pragma once

// Exponential sums f(alpha; X) = sum_{x <= X} e(alpha_1 x + ... + alpha_k x^k),
// minor-arc membership, and the orthogonality identity linking the 2s-th
// moment of f to the solution count J_{s,k}(X).

#include <complex>
#include <string>
#include <vector>

#include "vinotab/rational.hpp"

namespace vinotab {

/// Coefficients alpha_1..alpha_k (index 0 is alpha_1) and the length X.
/// Decimal inputs are converted to exact rationals with parse_decimal.
struct PhasePoint {
  std::vector<Rational> coefficients;
  long X = 1;
};

/// "0.618", "-1.25e-3", "3/7" or "5" as an exact rational.
Rational parse_decimal(const std::string& text);

/// Sum of e(phase(x)) for x = 1..X. Phases are reduced modulo 1 exactly using
/// the common denominator D of the coefficients; when D <= X the sum is folded
/// over one period. Compensated long double summation.
std::complex<long double> eval_f(const PhasePoint& point);

/// The single-coefficient sum g_k(alpha; X) = sum e(alpha x^k).
std::complex<long double> eval_g(const Rational& alpha, int k, long X);

/// F_k(beta; X): the full sum with the coefficient of x^{k-1} pinned to 0.
/// `beta` holds beta_1..beta_k; its (k-1)-th entry is ignored.
std::complex<long double> eval_F(std::vector<Rational> beta, long X);

struct ArcVerdict {
  bool minor = false;
  long a = 0;  // offending approximation when !minor
  long q = 0;
  long q_limit = 0;  // denominators scanned up to this bound
};

/// Waring minor arcs: alpha is minor unless some coprime (a, q) with
/// q <= X/(2k) has |q alpha - a| <= (2k)^{-1} X^{1-k}. Requires X >= 2k.
/// Every such a/q is a continued-fraction convergent of alpha (it lies
/// within 1/(2q^2) of alpha), so scanning convergents is complete.
ArcVerdict is_minor_arc(const Rational& alpha, int k, long X);

/// Theta minor arcs: alpha is minor unless some coprime (a, q) with q <= X^theta
/// has |q alpha - a| <= X^{theta - k}. Exact comparisons. Convergents are used
/// when 2 X^{2 theta - k} <= 1 (Legendre's criterion applies); otherwise every
/// q up to the limit is checked.
ArcVerdict is_minor_arc_theta(const Rational& alpha, int k, long X, const Rational& theta);

/// Dispatch used by the CLI: theta = 1 means the Waring arcs above.
ArcVerdict is_minor_arc(const Rational& alpha, int k, long X, const Rational& theta);

/// Exact mean of |f(a_1/Q_1, ..., a_k/Q_k)|^{2s} over the full grid, which by
/// orthogonality equals J_{s,k}(X) when Q_j >= s(X^j - 1) + 1 (enforced).
/// Computed on the integer congruential path.
BigInt grid_mean_moment(int s, int k, long X, const std::vector<long>& moduli);

/// Same mean by evaluating eval_f at every grid point in floating point.
long double grid_mean_moment_float(int s, int k, long X, const std::vector<long>& moduli);

struct EnvelopeReport {
  int k = 0;
  long q = 0;
  long a = 0;
  int j = 0;
  long X = 0;
  long sigma_inverse = 0;  // 2(k^2 - 3k + 3)
  long double envelope = 0;  // X (1/q + 1/X + q/X^j)^{1/sigma_inverse}
  std::complex<long double> value;  // f with alpha_j = a/q, other coefficients 0
  long double magnitude = 0;
  long double ratio = 0;  // magnitude / envelope
};

/// Requires gcd(a, q) = 1, 2 <= j <= k, 1 <= q <= X^j, k >= 3.
EnvelopeReport weyl_envelope_report(int k, long q, long a, int j, long X);

}  // namespace vinotab
