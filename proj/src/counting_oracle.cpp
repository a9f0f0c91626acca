#include "vinotab/counting_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace vinotab {

namespace {

std::string budget_message(double estimate, double budget) {
  std::ostringstream out;
  out << "estimated " << estimate << " profile states exceeds budget " << budget;
  return out.str();
}

BigInt from_u128(unsigned __int128 v) {
  BigInt hi(static_cast<unsigned long>(v >> 64));
  BigInt lo(static_cast<unsigned long>(v & ~std::uint64_t{0}));
  return (hi << 64) + lo;
}

// One coordinate of the profile. Exact digits store p_j - (#vars) * base
// directly; modular digits store p_j mod Q.
struct Digit {
  bool modular = false;
  long width = 1;
  long modulus = 1;
  std::int64_t base = 0;
  std::vector<long> step;  // per window value: x^j - base, or x^j mod Q
};

struct Layout {
  std::vector<Digit> digits;
  std::vector<long> stride;
  long cells = 1;
};

Layout make_layout(int s, int k, long X, long shift, const std::vector<long>& moduli,
                   double budget) {
  if (s < 1 || k < 1 || X < 1) throw std::invalid_argument("profile counting: need s, k, X >= 1");
  if (!moduli.empty() && moduli.size() != static_cast<std::size_t>(k))
    throw std::invalid_argument("profile counting: need one modulus per degree");
  for (long q : moduli) {
    if (q < 1) throw std::invalid_argument("profile counting: moduli must be positive");
  }
  const long double reach = static_cast<long double>(std::abs(shift) + X);
  if (static_cast<long double>(s) * std::pow(reach, k) > 4.0e18L)
    throw std::invalid_argument("profile counting: power sums exceed 64-bit range");

  const double estimate = profile_state_estimate(s, k, X, moduli);
  if (estimate > budget) throw BudgetExceeded(estimate, budget);

  Layout layout;
  layout.digits.resize(static_cast<std::size_t>(k));
  for (int j = 1; j <= k; ++j) {
    Digit& d = layout.digits[static_cast<std::size_t>(j - 1)];
    std::vector<std::int64_t> powers;
    powers.reserve(static_cast<std::size_t>(X));
    for (long x = shift + 1; x <= shift + X; ++x) {
      std::int64_t v = 1;
      for (int e = 0; e < j; ++e) v *= x;
      powers.push_back(v);
    }
    const auto [lo, hi] = std::minmax_element(powers.begin(), powers.end());
    d.base = *lo;
    const long exact_width = static_cast<long>(s) * (*hi - *lo) + 1;
    const long q = moduli.empty() ? exact_width : moduli[static_cast<std::size_t>(j - 1)];
    // A congruence modulo Q >= exact_width between sums in the same window is an equality.
    d.modular = q < exact_width;
    d.modulus = q;
    d.width = d.modular ? q : exact_width;
    for (std::int64_t v : powers) {
      d.step.push_back(d.modular ? static_cast<long>(((v % q) + q) % q) : static_cast<long>(v - d.base));
    }
  }
  layout.stride.assign(static_cast<std::size_t>(k), 1);
  for (int j = k - 1; j >= 0; --j) {
    layout.stride[static_cast<std::size_t>(j)] = layout.cells;
    layout.cells *= layout.digits[static_cast<std::size_t>(j)].width;
  }
  return layout;
}

// Dense convolution, one variable at a time; `live` lists the nonzero cells.
template <class Count>
std::vector<Count> convolve(int s, long X, const Layout& layout, std::vector<long>& live) {
  const std::size_t k = layout.digits.size();
  std::vector<Count> cur(static_cast<std::size_t>(layout.cells));
  cur[0] = 1;
  live.assign(1, 0);
  std::vector<long> digit(k);
  for (int var = 0; var < s; ++var) {
    std::vector<Count> next(static_cast<std::size_t>(layout.cells));
    std::vector<long> next_live;
    for (long idx : live) {
      long rest = idx;
      for (std::size_t j = 0; j < k; ++j) {
        digit[j] = rest / layout.stride[j];
        rest %= layout.stride[j];
      }
      const Count& c = cur[static_cast<std::size_t>(idx)];
      for (long x = 0; x < X; ++x) {
        long target = 0;
        for (std::size_t j = 0; j < k; ++j) {
          const Digit& d = layout.digits[j];
          long v = digit[j] + d.step[static_cast<std::size_t>(x)];
          if (d.modular && v >= d.modulus) v -= d.modulus;
          target += v * layout.stride[j];
        }
        Count& slot = next[static_cast<std::size_t>(target)];
        if (slot == 0) next_live.push_back(target);
        slot += c;
      }
    }
    cur.swap(next);
    live.swap(next_live);
  }
  std::sort(live.begin(), live.end());
  return cur;
}

bool fits_u64_total(int s, long X) {
  return static_cast<long double>(s) * std::log2(static_cast<long double>(X)) < 63.5L;
}

BigInt sum_squares(int s, long X, const Layout& layout) {
  std::vector<long> live;
  if (fits_u64_total(s, X)) {
    const auto counts = convolve<std::uint64_t>(s, X, layout, live);
    unsigned __int128 acc = 0;
    for (long idx : live) {
      const unsigned __int128 c = counts[static_cast<std::size_t>(idx)];
      acc += c * c;
    }
    return from_u128(acc);
  }
  const auto counts = convolve<BigInt>(s, X, layout, live);
  BigInt acc = 0;
  for (long idx : live) {
    const BigInt& c = counts[static_cast<std::size_t>(idx)];
    acc += c * c;
  }
  return acc;
}

}  // namespace

BudgetExceeded::BudgetExceeded(double estimate, double budget)
    : std::runtime_error(budget_message(estimate, budget)), estimate_(estimate), budget_(budget) {}

BigInt ProfileCounter::total() const {
  BigInt t = 0;
  for (const auto& [profile, c] : counts) t += c;
  return t;
}

BigInt ProfileCounter::sum_of_squares() const {
  BigInt t = 0;
  for (const auto& [profile, c] : counts) t += c * c;
  return t;
}

double profile_state_estimate(int s, int k, long X, const std::vector<long>& moduli) {
  double product = 1;
  for (int j = 1; j <= k; ++j) {
    double width = static_cast<double>(s) * (std::pow(static_cast<double>(X), j) - 1.0) + 1.0;
    if (!moduli.empty()) width = std::min(width, static_cast<double>(moduli[static_cast<std::size_t>(j - 1)]));
    product *= width;
  }
  return product;
}

ProfileCounter profile_counts(int s, int k, long X, long shift, double budget) {
  const Layout layout = make_layout(s, k, X, shift, {}, budget);
  ProfileCounter out{k, s, X, shift, {}};
  std::vector<long> live;
  auto emit = [&](const auto& counts) {
    out.counts.reserve(live.size());
    for (long idx : live) {
      std::vector<std::int64_t> profile(static_cast<std::size_t>(k));
      long rest = idx;
      for (std::size_t j = 0; j < profile.size(); ++j) {
        profile[j] = rest / layout.stride[j] + static_cast<std::int64_t>(s) * layout.digits[j].base;
        rest %= layout.stride[j];
      }
      out.counts.emplace_back(std::move(profile), BigInt(counts[static_cast<std::size_t>(idx)]));
    }
  };
  if (fits_u64_total(s, X)) {
    emit(convolve<std::uint64_t>(s, X, layout, live));
  } else {
    emit(convolve<BigInt>(s, X, layout, live));
  }
  return out;
}

BigInt count_J(int s, int k, long X, long shift, double budget) {
  return sum_squares(s, X, make_layout(s, k, X, shift, {}, budget));
}

BigInt count_J_congruential(int s, int k, long X, const std::vector<long>& moduli, double budget) {
  if (moduli.size() != static_cast<std::size_t>(k))
    throw std::invalid_argument("count_J_congruential: need one modulus per degree");
  return sum_squares(s, X, make_layout(s, k, X, 0, moduli, budget));
}

double empirical_growth(int s, int k, const std::vector<long>& xs, double budget) {
  if (xs.size() < 3) throw std::invalid_argument("empirical_growth: need at least 3 values of X");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] <= xs[i - 1]) throw std::invalid_argument("empirical_growth: X values must increase");
  }
  std::vector<double> lx;
  std::vector<double> ly;
  for (long X : xs) {
    const BigInt J = count_J(s, k, X, 0, budget);
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, J.get_mpz_t());
    lx.push_back(std::log(static_cast<double>(X)));
    ly.push_back(std::log(mant) + static_cast<double>(exp2) * std::log(2.0));
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0;
  double my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0;
  double sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

namespace {

bool is_small_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

long ipow(long b, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

CongruenceExtremum congruence_class_extremum(long p, int k, int n, int h, double budget) {
  if (!is_small_prime(p) || p > 13) throw std::invalid_argument("congruence_class_extremum: p must be a prime <= 13");
  if (k < 3 || k > 4) throw std::invalid_argument("congruence_class_extremum: k must be 3 or 4");
  if (n < 1 || n > k - 1) throw std::invalid_argument("congruence_class_extremum: n outside [1, k-1]");
  const int r = k - h;
  if (r < 1 || r > std::min(k - 2, (k + 1) / 2))
    throw std::invalid_argument("congruence_class_extremum: r = k - h outside its admissible range");
  const long range = ipow(p, k);
  const double work = static_cast<double>(p) * std::pow(static_cast<double>(range), n);
  if (work > budget) throw BudgetExceeded(work, budget);

  const long class_mod = ipow(p, h);
  std::vector<long> mod_j(static_cast<std::size_t>(k));
  for (int j = 1; j <= k; ++j) mod_j[static_cast<std::size_t>(j - 1)] = ipow(p, j);
  long class_cells = 1;
  for (int i = 0; i < n; ++i) class_cells *= class_mod;

  CongruenceExtremum out;
  const long mu = static_cast<long>(k - r - 1) * (k - r - 2) / 2;
  BigInt factorial = 1;
  for (int i = 2; i <= k; ++i) factorial *= i;
  out.bound = factorial * pow(BigInt(p), static_cast<unsigned long>(mu));

  std::vector<long> z(static_cast<std::size_t>(n));
  std::vector<std::uint64_t> keys;
  for (long eta = 1; eta <= p; ++eta) {
    keys.clear();
    // Iterate z over [1, p^k]^n like an odometer.
    std::fill(z.begin(), z.end(), 1);
    while (true) {
      bool admissible = true;
      for (int i = 0; i < n && admissible; ++i) {
        if ((z[static_cast<std::size_t>(i)] - eta) % p == 0) admissible = false;
        for (int l = 0; l < i && admissible; ++l) {
          if ((z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(l)]) % p == 0) admissible = false;
        }
      }
      if (admissible) {
        std::uint64_t m_key = 0;
        for (int j = 1; j <= k; ++j) {
          const long q = mod_j[static_cast<std::size_t>(j - 1)];
          long sum = 0;
          for (long zi : z) {
            long term = 1;
            const long base = (((zi - eta) % q) + q) % q;
            for (int e = 0; e < j; ++e) term = term * base % q;
            sum = (sum + term) % q;
          }
          m_key = m_key * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(sum);
        }
        std::uint64_t c_key = 0;
        for (long zi : z) c_key = c_key * static_cast<std::uint64_t>(class_mod) + static_cast<std::uint64_t>(zi % class_mod);
        keys.push_back(m_key * static_cast<std::uint64_t>(class_cells) + c_key);
      }
      int pos = n - 1;
      while (pos >= 0 && z[static_cast<std::size_t>(pos)] == range) {
        z[static_cast<std::size_t>(pos)] = 1;
        --pos;
      }
      if (pos < 0) break;
      ++z[static_cast<std::size_t>(pos)];
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (std::size_t i = 0; i < keys.size();) {
      const std::uint64_t m_key = keys[i] / static_cast<std::uint64_t>(class_cells);
      std::size_t jdx = i;
      while (jdx < keys.size() && keys[jdx] / static_cast<std::uint64_t>(class_cells) == m_key) ++jdx;
      const long classes = static_cast<long>(jdx - i);
      if (classes > out.max_classes) {
        out.max_classes = classes;
        out.eta = eta;
        out.residues.assign(static_cast<std::size_t>(k), 0);
        std::uint64_t rest = m_key;
        for (int j = k; j >= 1; --j) {
          const auto q = static_cast<std::uint64_t>(mod_j[static_cast<std::size_t>(j - 1)]);
          out.residues[static_cast<std::size_t>(j - 1)] = static_cast<long>(rest % q);
          rest /= q;
        }
      }
      i = jdx;
    }
  }
  out.ok = BigInt(out.max_classes) <= out.bound;
  return out;
}

}  // namespace vinotab
