#include "vinotab/exp_sums.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "vinotab/counting_oracle.hpp"

namespace vinotab {

Rational parse_decimal(const std::string& text) {
  if (text.find('/') != std::string::npos) return Rational::parse(text);
  std::string mantissa = text;
  long exponent = 0;
  const auto e = text.find_first_of("eE");
  if (e != std::string::npos) {
    mantissa = text.substr(0, e);
    try {
      exponent = std::stol(text.substr(e + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("parse_decimal: bad exponent in '" + text + "'");
    }
  }
  const auto dot = mantissa.find('.');
  if (dot != std::string::npos) {
    exponent -= static_cast<long>(mantissa.size() - dot - 1);
    mantissa.erase(dot, 1);
  }
  if (mantissa.empty() || mantissa == "-" || mantissa == "+")
    throw std::invalid_argument("parse_decimal: cannot parse '" + text + "'");
  if (mantissa[0] == '+') mantissa.erase(0, 1);
  Rational value;
  try {
    value = Rational(BigInt(mantissa, 10));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("parse_decimal: cannot parse '" + text + "'");
  }
  const BigInt scale = pow(BigInt(10), static_cast<unsigned long>(std::labs(exponent)));
  return exponent >= 0 ? value * Rational(scale) : value / Rational(scale);
}

namespace {

struct KahanComplex {
  long double re = 0, im = 0, cre = 0, cim = 0;
  void add(long double x, long double y) {
    const long double yr = x - cre;
    const long double tr = re + yr;
    cre = (tr - re) - yr;
    re = tr;
    const long double yi = y - cim;
    const long double ti = im + yi;
    cim = (ti - im) - yi;
    im = ti;
  }
  std::complex<long double> value() const { return {re, im}; }
};

constexpr long double kTwoPi = 2.0L * std::numbers::pi_v<long double>;

// e(r / D) with r reduced to [-D/2, D/2] for accuracy.
std::complex<long double> unit(long double r, long double D) {
  if (2 * r > D) r -= D;
  const long double angle = kTwoPi * (r / D);
  return {std::cos(angle), std::sin(angle)};
}

// Partial sum over x = 1..m of e(N(x)/D), N(x) = sum_j n_j x^j.
std::complex<long double> partial_small(const std::vector<std::uint64_t>& n, std::uint64_t D, long m) {
  KahanComplex acc;
  const auto Dd = static_cast<long double>(D);
  for (long x = 1; x <= m; ++x) {
    const auto xr = static_cast<unsigned __int128>(static_cast<std::uint64_t>(x) % D);
    unsigned __int128 power = 1;
    unsigned __int128 phase = 0;
    for (std::uint64_t nj : n) {
      power = power * xr % D;
      phase = (phase + power * nj) % D;
    }
    const auto z = unit(static_cast<long double>(static_cast<std::uint64_t>(phase)), Dd);
    acc.add(z.real(), z.imag());
  }
  return acc.value();
}

std::complex<long double> partial_big(const std::vector<BigInt>& n, const BigInt& D, long m) {
  KahanComplex acc;
  for (long x = 1; x <= m; ++x) {
    BigInt power = 1;
    BigInt phase = 0;
    const BigInt xb(x);
    for (const BigInt& nj : n) {
      power = power * xb % D;
      phase = (phase + power * nj) % D;
    }
    // r/D in long double via the exact rational.
    long double r = Rational(phase, D).to_long_double();
    if (r > 0.5L) r -= 1.0L;
    const long double angle = kTwoPi * r;
    acc.add(std::cos(angle), std::sin(angle));
  }
  return acc.value();
}

}  // namespace

std::complex<long double> eval_f(const PhasePoint& point) {
  if (point.X < 1) throw std::invalid_argument("eval_f: X must be positive");
  BigInt D = 1;
  for (const Rational& c : point.coefficients) {
    mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), c.den().get_mpz_t());
  }
  std::vector<BigInt> n;
  for (const Rational& c : point.coefficients) {
    BigInt v = (c * Rational(D)).num();
    v %= D;
    if (v < 0) v += D;
    n.push_back(v);
  }
  const long X = point.X;
  const bool small = D < BigInt(1) << 62;
  auto partial = [&](long m) -> std::complex<long double> {
    if (m <= 0) return {0, 0};
    if (small) {
      std::vector<std::uint64_t> ns;
      for (const BigInt& v : n) ns.push_back(v.get_ui());
      return partial_small(ns, D.get_ui(), m);
    }
    return partial_big(n, D, m);
  };
  if (D <= X) {
    const long period = D.get_si();
    const long double full = static_cast<long double>(X / period);
    return partial(period) * full + partial(X % period);
  }
  return partial(X);
}

std::complex<long double> eval_g(const Rational& alpha, int k, long X) {
  if (k < 1) throw std::invalid_argument("eval_g: k must be positive");
  PhasePoint p;
  p.coefficients.assign(static_cast<std::size_t>(k), Rational(0));
  p.coefficients.back() = alpha;
  p.X = X;
  return eval_f(p);
}

std::complex<long double> eval_F(std::vector<Rational> beta, long X) {
  if (beta.size() >= 2) beta[beta.size() - 2] = Rational(0);
  return eval_f(PhasePoint{std::move(beta), X});
}

namespace {

// |q alpha - a| as an exact rational.
Rational gap(const Rational& alpha, long q, long a) {
  const Rational d = Rational(q) * alpha - Rational(a);
  return d.sign() < 0 ? -d : d;
}

struct Convergent {
  BigInt p, q;
};

// Convergents of alpha with denominator at most q_limit, in order.
std::vector<Convergent> convergents(const Rational& alpha, long q_limit) {
  std::vector<Convergent> out;
  BigInt p_prev = 1, q_prev = 0;
  BigInt p_cur = alpha.floor(), q_cur = 1;
  Rational rest = alpha - Rational(p_cur);
  while (q_cur <= q_limit) {
    out.push_back({p_cur, q_cur});
    if (rest.sign() == 0) break;
    const Rational inv = Rational(1) / rest;
    const BigInt a = inv.floor();
    rest = inv - Rational(a);
    const BigInt p_next = a * p_cur + p_prev;
    const BigInt q_next = a * q_cur + q_prev;
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
  }
  return out;
}

template <class Within>
ArcVerdict scan(const Rational& alpha, long q_limit, bool use_convergents, Within within) {
  ArcVerdict verdict;
  verdict.q_limit = q_limit;
  if (use_convergents) {
    for (const auto& c : convergents(alpha, q_limit)) {
      const long q = c.q.get_si();
      const long a = c.p.get_si();
      if (within(gap(alpha, q, a))) {
        verdict.a = a;
        verdict.q = q;
        return verdict;
      }
    }
  } else {
    if (q_limit > 10'000'000) throw std::invalid_argument("is_minor_arc: denominator scan too large");
    for (long q = 1; q <= q_limit; ++q) {
      // The nearest integer to q alpha minimizes the gap.
      const Rational qa = Rational(q) * alpha + Rational(1, 2);
      const long a = qa.floor().get_si();
      if (within(gap(alpha, q, a))) {
        verdict.a = a;
        verdict.q = q;
        return verdict;
      }
    }
  }
  verdict.minor = true;
  return verdict;
}

}  // namespace

ArcVerdict is_minor_arc(const Rational& alpha, int k, long X) {
  if (k < 2) throw std::invalid_argument("is_minor_arc: k must be at least 2");
  if (X < 2L * k) throw std::invalid_argument("is_minor_arc: need X >= 2k");
  const long q_limit = X / (2L * k);
  const Rational scale = Rational(2L * k) * Rational(pow(BigInt(X), static_cast<unsigned long>(k - 1)));
  return scan(alpha, q_limit, true, [&](const Rational& g) { return g * scale <= Rational(1); });
}

ArcVerdict is_minor_arc_theta(const Rational& alpha, int k, long X, const Rational& theta) {
  if (k < 2) throw std::invalid_argument("is_minor_arc: k must be at least 2");
  if (X < 2L * k) throw std::invalid_argument("is_minor_arc: need X >= 2k");
  if (theta.sign() <= 0 || theta >= Rational(k)) throw std::invalid_argument("is_minor_arc: theta outside (0, k)");
  const unsigned long d = theta.den().get_ui();
  const unsigned long n = theta.num().get_ui();
  const BigInt Xn = pow(BigInt(X), n);
  // q <= X^theta  <=>  q^d <= X^n.
  BigInt root;
  mpz_root(root.get_mpz_t(), Xn.get_mpz_t(), d);
  const long q_limit = root.get_si();
  // |q alpha - a| <= X^{theta - k}  <=>  gap^d * X^{kd - n} <= 1.
  const Rational scale(pow(BigInt(X), static_cast<unsigned long>(k) * d - n));
  auto within = [&](const Rational& g) {
    Rational gd(1);
    for (unsigned long i = 0; i < d; ++i) gd *= g;
    return gd * scale <= Rational(1);
  };
  // Legendre applies when 2 q <= X^{k - theta} for every q <= X^theta,
  // i.e. 2^d X^n <= X^{kd - n}.
  const bool legendre = pow(BigInt(2), d) * Xn <= pow(BigInt(X), static_cast<unsigned long>(k) * d - n);
  return scan(alpha, q_limit, legendre, within);
}

ArcVerdict is_minor_arc(const Rational& alpha, int k, long X, const Rational& theta) {
  if (theta == Rational(1)) return is_minor_arc(alpha, k, X);
  return is_minor_arc_theta(alpha, k, X, theta);
}

namespace {

void check_grid(int s, int k, long X, const std::vector<long>& moduli) {
  if (moduli.size() != static_cast<std::size_t>(k))
    throw std::invalid_argument("grid_mean_moment: need one modulus per degree");
  BigInt power = 1;
  for (int j = 1; j <= k; ++j) {
    power *= X;
    if (BigInt(moduli[static_cast<std::size_t>(j - 1)]) < BigInt(s) * (power - 1) + 1)
      throw std::invalid_argument("grid_mean_moment: need Q_j >= s(X^j - 1) + 1");
  }
}

}  // namespace

BigInt grid_mean_moment(int s, int k, long X, const std::vector<long>& moduli) {
  check_grid(s, k, X, moduli);
  // Orthogonality on the finite grid: the mean of |f|^{2s} counts pairs whose
  // power sums agree modulo every Q_j.
  return count_J_congruential(s, k, X, moduli);
}

long double grid_mean_moment_float(int s, int k, long X, const std::vector<long>& moduli) {
  check_grid(s, k, X, moduli);
  double cells = 1;
  for (long q : moduli) cells *= static_cast<double>(q);
  if (cells > 1e7) throw BudgetExceeded(cells, 1e7);
  std::vector<long> index(static_cast<std::size_t>(k), 0);
  long double sum = 0;
  long double comp = 0;
  while (true) {
    PhasePoint p;
    p.X = X;
    for (int j = 0; j < k; ++j)
      p.coefficients.emplace_back(index[static_cast<std::size_t>(j)], moduli[static_cast<std::size_t>(j)]);
    const long double m2 = std::norm(eval_f(p));
    const long double term = std::pow(m2, static_cast<long double>(s)) - comp;
    const long double t = sum + term;
    comp = (t - sum) - term;
    sum = t;
    int pos = k - 1;
    while (pos >= 0 && ++index[static_cast<std::size_t>(pos)] == moduli[static_cast<std::size_t>(pos)]) {
      index[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return sum / static_cast<long double>(cells);
}

EnvelopeReport weyl_envelope_report(int k, long q, long a, int j, long X) {
  if (k < 3) throw std::invalid_argument("weyl_envelope_report: k must be at least 3");
  if (j < 2 || j > k) throw std::invalid_argument("weyl_envelope_report: j outside [2, k]");
  if (q < 1 || X < 1) throw std::invalid_argument("weyl_envelope_report: q and X must be positive");
  if (std::gcd(a, q) != 1) throw std::invalid_argument("weyl_envelope_report: need gcd(a, q) = 1");
  if (BigInt(q) > pow(BigInt(X), static_cast<unsigned long>(j)))
    throw std::invalid_argument("weyl_envelope_report: need q <= X^j");
  EnvelopeReport r;
  r.k = k;
  r.q = q;
  r.a = a;
  r.j = j;
  r.X = X;
  r.sigma_inverse = 2 * (static_cast<long>(k) * k - 3L * k + 3);
  const auto Xd = static_cast<long double>(X);
  const long double bracket = 1.0L / static_cast<long double>(q) + 1.0L / Xd +
                              static_cast<long double>(q) / std::pow(Xd, static_cast<long double>(j));
  r.envelope = Xd * std::pow(bracket, 1.0L / static_cast<long double>(r.sigma_inverse));
  PhasePoint p;
  p.X = X;
  p.coefficients.assign(static_cast<std::size_t>(k), Rational(0));
  p.coefficients[static_cast<std::size_t>(j - 1)] = Rational(a, q);
  r.value = eval_f(p);
  r.magnitude = std::abs(r.value);
  r.ratio = r.magnitude / r.envelope;
  return r;
}

}  // namespace vinotab
