#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cmseq/rational.hpp"

namespace cmseq {

/// Dense univariate polynomial with exact coefficients, ascending degree.
/// The highest stored coefficient is nonzero; the zero polynomial stores none.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coefficients);

  static Poly constant(const Rational& c);
  /// ∏ (x + s) over the given shifts; the empty product is 1.
  static Poly from_shift_roots(std::span<const Rational> shifts);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  /// Coefficient of x^i, zero beyond the degree.
  Rational coefficient(std::size_t i) const;
  Rational leading() const;

  Rational operator()(const Rational& x) const;
  double operator()(double x) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rational& s, const Poly& p);
  friend bool operator==(const Poly& a, const Poly& b) = default;

  /// Quotient and remainder of Euclidean division. Throws on a zero divisor.
  std::pair<Poly, Poly> divmod(const Poly& divisor) const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

struct Pole {
  Rational shift;  // the pole sits at x = -shift
  unsigned multiplicity = 1;
  friend bool operator==(const Pole&, const Pole&) = default;
};

/// r(x) = p(x) / ∏ (x + b_i) evaluated on ℤ₊.
///
/// Shifts use the sign convention r(x) = ∏(x+a_i)/∏(x+b_i): the actual zeros
/// and poles sit at -a_i and -b_i. Poles are kept sorted ascending with
/// multiplicities merged; every b_i must be positive and deg p ≤ k + 1 where
/// k counts poles with multiplicity.
class RationalSeq {
 public:
  RationalSeq(Poly numerator, std::vector<Rational> pole_shifts);

  /// Numerator given in factored form ∏ (x + a_i); the shifts are kept as metadata.
  static RationalSeq factored(std::vector<Rational> zero_shifts, std::vector<Rational> pole_shifts);

  const Poly& numerator() const { return numerator_; }
  const std::vector<Pole>& poles() const { return poles_; }
  /// Pole shifts expanded by multiplicity, ascending.
  std::vector<Rational> pole_shifts() const;
  std::size_t pole_count() const;
  bool has_simple_poles() const;
  /// Sorted ascending when the numerator was given in factored form.
  const std::optional<std::vector<Rational>>& zero_shifts() const { return zero_shifts_; }
  Poly denominator() const;

  Rational operator()(std::uint64_t n) const;
  Rational eval(const Rational& x) const;
  double eval(double x) const;

  /// r + c as a new sequence (the factored metadata is dropped).
  RationalSeq plus_constant(const Rational& c) const;

 private:
  Poly numerator_;
  std::vector<Pole> poles_;
  std::optional<std::vector<Rational>> zero_shifts_;
};

}  // namespace cmseq
