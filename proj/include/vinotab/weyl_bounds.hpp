#pragma once

// Weyl-type exponents: sup over minor arcs of |g_k(alpha; X)| << X^{1 - sigma + eps}.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vinotab/exponent_catalog.hpp"

namespace vinotab {

struct WeylReport {
  int k = 0;
  long sigma_inverse_direct = 0;  // 2(k^2 - 3k + 3)
  long tau_inverse = 0;           // 4(k^2 - 3k + 3)
  std::optional<Rational> sigma_bw;  // max_s (3 - Delta_{s,k-1}) / (6s + 2)
  long sigma_bw_argmax = 0;
  std::optional<Rational> mu;  // two-parameter exponents, large-degree route
  std::optional<Rational> nu;
  Rational sigma;  // best exponent carried by this report
  std::vector<std::pair<std::string, long>> witness;
  std::vector<std::pair<std::string, long>> search;
  std::string anchor;

  Rational sigma_inverse() const { return Rational(1) / sigma; }
};

struct DirectWeyl {
  long sigma_inverse = 0;
  long tau_inverse = 0;
};

/// (2(k^2 - 3k + 3), 4(k^2 - 3k + 3)). Requires k >= 4.
DirectWeyl weyl_direct(int k);

/// max over k <= s <= 2k^2 of (3 - Delta_{s,k-1}) / (6s + 2), skipping Delta >= 3.
/// Requires k >= 4 and the degree k-1 catalog.
WeylReport sigma_bw(int k, const ExponentTable& table_km1);

struct MuNu {
  Rational mu;  // (R - Delta_{s,k-1}) / (2Rs)
  Rational nu;  // (k - R(1 + Delta_{t,k})) / (2tk)
  bool useful() const { return mu.sign() > 0 && nu.sign() > 0; }
  Rational exponent() const { return min(mu, nu); }
};

/// Requires 1 <= R <= k/2, s >= k(k-1)/2, t >= 1.
MuNu mu_nu_exponents(int k, long R, long s, long t, const Rational& delta_s_km1,
                     const Rational& delta_t_k);
MuNu mu_nu_exponents(int k, long R, long s, long t, const ExponentTable& table_km1,
                     const ExponentTable& table_k);

/// Maximizes min(mu, nu) over 1 <= R <= k/2 with
///   s = (k-1)^2 - r(k-1) + r(r+3)/2 - 1,  t = k^2 - uk + u(u+3)/2 - 1
/// over every admissible r (degree k-1) and u (degree k), using the closed-form
/// exponents at those points. Optional catalogs replace them where smaller.
/// Requires k >= 9. Witness (R, r, s, u, t).
WeylReport weyl_large_k(int k, const ExponentTable* table_km1 = nullptr,
                        const ExponentTable* table_k = nullptr);

}  // namespace vinotab
