#pragma once

#include <cstdint>
#include <vector>

#include "cmseq/poly.hpp"
#include "cmseq/rational.hpp"

namespace cmseq {

struct PoleTerm {
  Rational pole;  // shift b of the factor (x + b)
  unsigned order = 1;
  Rational coefficient;
  friend bool operator==(const PoleTerm&, const PoleTerm&) = default;
};

/// r(x) = a0 + a1·x + Σ c / (x + b)^order.
///
/// Terms are ordered by ascending pole, then ascending order, with one entry
/// per (pole, order) pair even when the coefficient vanishes.
struct PartialFractions {
  Rational a0;
  Rational a1;
  std::vector<PoleTerm> terms;

  Rational operator()(const Rational& x) const;
};

/// Exact decomposition via a linear solve in the monomial basis; handles
/// poles of any multiplicity.
PartialFractions partial_fractions(const RationalSeq& r);

/// True iff pf reproduces r(n) exactly for every n in [0, n_max].
bool reconstruct_check(const PartialFractions& pf, const RationalSeq& r, std::uint64_t n_max);

struct CoefficientSums {
  Rational lhs;  // Σ c_i
  Rational rhs;  // Σ (a_i - b_i)
};

/// Both sides of Σ c_i = Σ (a_i - b_i) for r = ∏(x+a_i)/∏(x+b_i).
/// Throws InputError unless r is factored with k simple poles and k zeros.
CoefficientSums coefficient_sum_identity(const RationalSeq& r);

}  // namespace cmseq
