#include "cmseq/rational.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "cmseq/errors.hpp"

namespace cmseq {

Rational::Rational(const BigInt& num, const BigInt& den) : q_(num, den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q)) {
  if (q_.get_den() == 0) throw std::domain_error("rational with zero denominator");
  q_.canonicalize();
}

Rational Rational::from_double(double v) {
  if (!std::isfinite(v)) throw std::domain_error("non-finite double has no rational value");
  return Rational(mpq_class(v));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  q_ /= o.q_;
  return *this;
}

std::string Rational::to_string() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_str();
}

std::string Rational::to_fraction_string() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Rational pow(const Rational& base, unsigned exponent) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), exponent);
  return Rational(num, den);
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.to_string(); }

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::size_t scan_digits(std::string_view s, std::size_t pos) {
  while (pos < s.size() && is_digit(s[pos])) ++pos;
  return pos;
}

}  // namespace

Rational rat_from_string(std::string_view text) {
  auto fail = [&](const char* why) {
    return InputError(std::string("malformed rational '") + std::string(text) + "': " + why);
  };
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && text[pos] == '-') {
    negative = true;
    ++pos;
  }
  const std::size_t int_begin = pos;
  pos = scan_digits(text, pos);
  if (pos == int_begin) throw fail("expected digits");
  BigInt num(std::string(text.substr(int_begin, pos - int_begin)), 10);
  BigInt den = 1;

  if (pos < text.size() && text[pos] == '/') {
    const std::size_t den_begin = ++pos;
    pos = scan_digits(text, pos);
    if (pos == den_begin) throw fail("expected denominator digits");
    den = BigInt(std::string(text.substr(den_begin, pos - den_begin)), 10);
    if (den == 0) throw fail("zero denominator");
  } else if (pos < text.size() && text[pos] == '.') {
    const std::size_t frac_begin = ++pos;
    pos = scan_digits(text, pos);
    if (pos == frac_begin) throw fail("expected fractional digits");
    const auto frac = text.substr(frac_begin, pos - frac_begin);
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    num = num * den + BigInt(std::string(frac), 10);
  }
  if (pos != text.size()) throw fail("trailing characters");
  if (negative) num = -num;
  return Rational(num, den);
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw std::domain_error("binomial: k > n");
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

BigInt factorial(std::uint64_t n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

}  // namespace cmseq
