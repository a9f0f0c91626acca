#pragma once

// Exact solution counts for the Vinogradov system
//     x_1^j + ... + x_s^j = y_1^j + ... + y_s^j   (1 <= j <= k)
// with variables in a window of X consecutive integers, by convolution of
// power-sum profiles. Desk-scale only; used to validate the analytic side.

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vinotab/rational.hpp"

namespace vinotab {

inline constexpr double kDefaultStateBudget = 1e7;

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(double estimate, double budget);
  double estimate() const { return estimate_; }
  double budget() const { return budget_; }

 private:
  double estimate_;
  double budget_;
};

/// Multiplicity of every attainable profile (sum x_i, sum x_i^2, ..., sum x_i^k)
/// over x_i in [shift + 1, shift + X]. Profiles sorted lexicographically.
struct ProfileCounter {
  int k = 0;
  int s = 0;
  long X = 0;
  long shift = 0;
  std::vector<std::pair<std::vector<std::int64_t>, BigInt>> counts;

  BigInt total() const;         // X^s
  BigInt sum_of_squares() const;  // J_{s,k}(X)
};

/// Product over j of min(s X^j - s + 1, Q_j): the number of profile cells the
/// convolution may touch. Pass an empty modulus list for the exact system.
double profile_state_estimate(int s, int k, long X, const std::vector<long>& moduli = {});

ProfileCounter profile_counts(int s, int k, long X, long shift = 0,
                              double budget = kDefaultStateBudget);

/// J_{s,k}(X): number of (x, y) in window^{2s} solving the system.
BigInt count_J(int s, int k, long X, long shift = 0, double budget = kDefaultStateBudget);

/// Number of (x, y) in [1, X]^{2s} with sum x_i^j = sum y_i^j (mod Q_j) for each j.
BigInt count_J_congruential(int s, int k, long X, const std::vector<long>& moduli,
                            double budget = kDefaultStateBudget);

/// Least-squares slope of log J_{s,k}(X) against log X. Needs >= 3 increasing X.
double empirical_growth(int s, int k, const std::vector<long>& xs,
                        double budget = kDefaultStateBudget);

struct CongruenceExtremum {
  long max_classes = 0;
  BigInt bound;  // k! p^mu with mu = (k-r-1)(k-r-2)/2, r = k - h
  bool ok = false;
  long eta = 0;  // a bucket attaining the maximum
  std::vector<long> residues;  // its m_j, j = 1..k
};

/// For each eta in [1, p] and each residue vector m (m_j mod p^j), the tuples
/// z in [1, p^k]^n with pairwise distinct residues mod p, all z_i != eta mod p,
/// and sum (z_i - eta)^j = m_j (mod p^j) are grouped into classes mod p^h.
/// Returns the largest class count. Requires p prime <= 13, 3 <= k <= 4,
/// 1 <= n <= k - 1, and r = k - h in [1, min(k-2, (k+1)/2)].
CongruenceExtremum congruence_class_extremum(long p, int k, int n, int h,
                                             double budget = 5e7);

}  // namespace vinotab
