#include "cmseq/poly.hpp"

#include <algorithm>
#include <stdexcept>

#include "cmseq/errors.hpp"

namespace cmseq {

Poly::Poly(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly Poly::constant(const Rational& c) { return Poly({c}); }

Poly Poly::from_shift_roots(std::span<const Rational> shifts) {
  std::vector<Rational> c{Rational(1)};
  c.reserve(shifts.size() + 1);
  for (const auto& s : shifts) {
    // multiply by (x + s) in place
    c.push_back(Rational(0));
    for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] + s * c[i];
    c[0] = s * c[0];
  }
  return Poly(std::move(c));
}

Rational Poly::coefficient(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : Rational(0);
}

Rational Poly::leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

Rational Poly::operator()(const Rational& x) const {
  Rational acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Poly::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->to_double();
  return acc;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Poly(std::move(out));
}

Poly operator*(const Rational& s, const Poly& p) {
  std::vector<Rational> out = p.coeffs_;
  for (auto& c : out) c *= s;
  return Poly(std::move(out));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = coeffs_;
  const int dd = divisor.degree();
  if (degree() < dd) return {Poly(), *this};
  std::vector<Rational> quot(static_cast<std::size_t>(degree() - dd + 1));
  const Rational lead = divisor.leading();
  for (int i = degree() - dd; i >= 0; --i) {
    const Rational q = rem[static_cast<std::size_t>(i + dd)] / lead;
    quot[static_cast<std::size_t>(i)] = q;
    if (q.is_zero()) continue;
    for (int j = 0; j <= dd; ++j)
      rem[static_cast<std::size_t>(i + j)] -= q * divisor.coeffs_[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

namespace {

std::vector<Pole> merge_poles(std::vector<Rational> shifts) {
  std::sort(shifts.begin(), shifts.end());
  std::vector<Pole> poles;
  for (auto& s : shifts) {
    if (s.sign() <= 0) throw InputError("pole shift must be positive, got " + s.to_string());
    if (!poles.empty() && poles.back().shift == s)
      ++poles.back().multiplicity;
    else
      poles.push_back(Pole{std::move(s), 1});
  }
  return poles;
}

}  // namespace

RationalSeq::RationalSeq(Poly numerator, std::vector<Rational> pole_shifts)
    : numerator_(std::move(numerator)), poles_(merge_poles(std::move(pole_shifts))) {
  const auto k = static_cast<int>(pole_count());
  if (numerator_.degree() > k + 1)
    throw InputError("numerator degree " + std::to_string(numerator_.degree()) +
                     " exceeds pole count + 1 = " + std::to_string(k + 1));
}

RationalSeq RationalSeq::factored(std::vector<Rational> zero_shifts,
                                  std::vector<Rational> pole_shifts) {
  std::sort(zero_shifts.begin(), zero_shifts.end());
  RationalSeq r(Poly::from_shift_roots(zero_shifts), std::move(pole_shifts));
  r.zero_shifts_ = std::move(zero_shifts);
  return r;
}

std::vector<Rational> RationalSeq::pole_shifts() const {
  std::vector<Rational> out;
  for (const auto& p : poles_)
    for (unsigned i = 0; i < p.multiplicity; ++i) out.push_back(p.shift);
  return out;
}

std::size_t RationalSeq::pole_count() const {
  std::size_t k = 0;
  for (const auto& p : poles_) k += p.multiplicity;
  return k;
}

bool RationalSeq::has_simple_poles() const {
  return std::all_of(poles_.begin(), poles_.end(), [](const Pole& p) { return p.multiplicity == 1; });
}

Poly RationalSeq::denominator() const {
  const auto shifts = pole_shifts();
  return Poly::from_shift_roots(shifts);
}

Rational RationalSeq::eval(const Rational& x) const {
  Rational den(1);
  for (const auto& p : poles_) den *= pow(x + p.shift, p.multiplicity);
  return numerator_(x) / den;
}

Rational RationalSeq::operator()(std::uint64_t n) const { return eval(Rational(n)); }

double RationalSeq::eval(double x) const {
  double den = 1.0;
  for (const auto& p : poles_) {
    const double f = x + p.shift.to_double();
    for (unsigned i = 0; i < p.multiplicity; ++i) den *= f;
  }
  return numerator_(x) / den;
}

RationalSeq RationalSeq::plus_constant(const Rational& c) const {
  return RationalSeq(numerator_ + c * denominator(), pole_shifts());
}

}  // namespace cmseq
