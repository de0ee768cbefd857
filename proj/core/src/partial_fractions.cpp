#include "cmseq/partial_fractions.hpp"

#include <stdexcept>
#include <utility>

#include "cmseq/errors.hpp"

namespace cmseq {

Rational PartialFractions::operator()(const Rational& x) const {
  Rational acc = a0 + a1 * x;
  for (const auto& t : terms) acc += t.coefficient / pow(x + t.pole, t.order);
  return acc;
}

namespace {

// Solves A·x = rhs in place by Gaussian elimination; A is square and nonsingular.
std::vector<Rational> solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) throw std::logic_error("partial fractions: singular basis matrix");
    std::swap(a[pivot], a[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col].is_zero()) continue;
      const Rational f = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
      rhs[row] -= f * rhs[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) rhs[i] /= a[i][i];
  return rhs;
}

}  // namespace

PartialFractions partial_fractions(const RationalSeq& r) {
  const Poly q = r.denominator();
  auto [quot, rem] = r.numerator().divmod(q);

  PartialFractions pf;
  pf.a0 = quot.coefficient(0);
  pf.a1 = quot.coefficient(1);

  const std::size_t k = r.pole_count();
  if (k == 0) return pf;

  // rem = Σ_{i,j} c_{ij} · q / (x + b_i)^j ; one column per (pole, order).
  std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k));
  std::size_t col = 0;
  for (std::size_t i = 0; i < r.poles().size(); ++i) {
    const auto& pole = r.poles()[i];
    Poly others = Poly::constant(Rational(1));
    for (std::size_t l = 0; l < r.poles().size(); ++l) {
      if (l == i) continue;
      const auto& o = r.poles()[l];
      for (unsigned m = 0; m < o.multiplicity; ++m) others = others * Poly({o.shift, Rational(1)});
    }
    for (unsigned j = 1; j <= pole.multiplicity; ++j) {
      Poly basis = others;
      for (unsigned m = 0; m < pole.multiplicity - j; ++m) basis = basis * Poly({pole.shift, Rational(1)});
      for (std::size_t d = 0; d < k; ++d) a[d][col] = basis.coefficient(d);
      pf.terms.push_back(PoleTerm{pole.shift, j, Rational(0)});
      ++col;
    }
  }
  std::vector<Rational> rhs(k);
  for (std::size_t d = 0; d < k; ++d) rhs[d] = rem.coefficient(d);

  const auto c = solve_exact(std::move(a), std::move(rhs));
  for (std::size_t t = 0; t < k; ++t) pf.terms[t].coefficient = c[t];
  return pf;
}

bool reconstruct_check(const PartialFractions& pf, const RationalSeq& r, std::uint64_t n_max) {
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    const Rational x(n);
    if (pf(x) != r.eval(x)) return false;
  }
  return true;
}

CoefficientSums coefficient_sum_identity(const RationalSeq& r) {
  const auto& zeros = r.zero_shifts();
  if (!zeros || !r.has_simple_poles() || zeros->size() != r.pole_count())
    throw InputError("coefficient sum identity needs a factored numerator with k zeros and k simple poles");
  const auto pf = partial_fractions(r);
  CoefficientSums out;
  for (const auto& t : pf.terms) out.lhs += t.coefficient;
  for (const auto& a : *zeros) out.rhs += a;
  for (const auto& p : r.poles()) out.rhs -= p.shift;
  return out;
}

}  // namespace cmseq
