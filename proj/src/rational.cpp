#include "vinotab/rational.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace vinotab {

Rational::Rational(const BigInt& num, const BigInt& den) : q_(num, den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  q_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text, 10));
    return Rational(BigInt(text.substr(0, slash), 10), BigInt(text.substr(slash + 1), 10));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("Rational: cannot parse '" + text + "'");
  }
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.sign() == 0) throw std::domain_error("Rational: division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::operator-() const {
  Rational r;
  r.q_ = -q_;
  return r;
}

BigInt Rational::floor() const {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return out;
}

BigInt Rational::ceil() const {
  BigInt out;
  mpz_cdiv_q(out.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return out;
}

long double Rational::to_long_double() const {
  if (sign() == 0) return 0.0L;
  // Integer quotient with ~72 significant bits, converted in two exact pieces.
  const BigInt num = abs(q_.get_num());
  const BigInt den = q_.get_den();
  const long shift = 72 - (static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                           static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)));
  BigInt quotient;
  if (shift >= 0) {
    quotient = BigInt(num << shift) / den;
  } else {
    quotient = num / BigInt(den << -shift);
  }
  const BigInt high = quotient >> 40;
  const BigInt low = quotient - (high << 40);
  const long double value = std::ldexp(static_cast<long double>(high.get_ui()), 40) +
                            static_cast<long double>(low.get_ui());
  const long double out = std::ldexp(value, static_cast<int>(-shift));
  return sign() < 0 ? -out : out;
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

namespace {

std::string format_scaled(const BigInt& scaled, int places) {
  const bool negative = scaled < 0;
  std::string digits = BigInt(abs(scaled)).get_str();
  if (places > 0) {
    if (static_cast<int>(digits.size()) <= places) {
      digits.insert(0, static_cast<std::size_t>(places + 1 - digits.size()), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  }
  return negative ? "-" + digits : digits;
}

BigInt ten_pow(int places) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(places));
  return p;
}

}  // namespace

std::string Rational::decimal_ceil(int places) const {
  if (places < 0) throw std::invalid_argument("decimal_ceil: negative places");
  return format_scaled((*this * Rational(ten_pow(places))).ceil(), places);
}

std::string Rational::decimal_trunc(int places) const {
  if (places < 0) throw std::invalid_argument("decimal_trunc: negative places");
  const Rational scaled = *this * Rational(ten_pow(places));
  BigInt t;
  mpz_tdiv_q(t.get_mpz_t(), scaled.q_.get_num_mpz_t(), scaled.q_.get_den_mpz_t());
  return format_scaled(t, places);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

bool fits_int64(const BigInt& v) {
  static const BigInt lo(std::to_string(std::numeric_limits<std::int64_t>::min()));
  static const BigInt hi(std::to_string(std::numeric_limits<std::int64_t>::max()));
  return v >= lo && v <= hi;
}

}  // namespace vinotab
