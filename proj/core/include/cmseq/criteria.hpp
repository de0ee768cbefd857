#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cmseq/diff_oracle.hpp"
#include "cmseq/poly.hpp"
#include "cmseq/rational.hpp"

namespace cmseq {

enum class Criterion {
  Ball,
  Main3PartialSums,
  Main1PermCM,
  Main1PermCA,
  CARoot1,
  CARoot2,
  CARoot2b,
  SpecialCase,
  BiCase,
  CAExInterlace,
  CnPos,
  NecCondSumCM,
  NecCondSumCA,
  BiCompI,
  BiCompII,
  BiCompIII,
  BiPoly,
};

enum class Status { Holds, Fails, NotApplicable };

/// Whether a criterion's verdict is an equivalence, a sufficient condition
/// or a necessary condition for the property it speaks about.
enum class Strength { Iff, Sufficient, Necessary };

std::string_view to_string(Criterion c);
std::string_view to_string(Status s);
Strength strength_of(Criterion c);
/// The property a criterion speaks about (2-D CM for the net criteria).
Property property_of(Criterion c);

enum class Relation { LessEq, Less };

struct Inequality {
  std::string label;
  Rational lhs;
  Relation relation = Relation::LessEq;
  Rational rhs;
  bool holds = false;
};

/// Structured verdict of one closed-form criterion.
///
/// status is Holds iff every listed inequality holds; NotApplicable carries a
/// note explaining which hypothesis failed. certificate is a one-line
/// permutation (1-based, in sorted order) for the Main1Perm criteria.
struct ConditionReport {
  Criterion criterion = Criterion::Ball;
  Status status = Status::NotApplicable;
  std::vector<Inequality> detail;
  std::optional<std::vector<std::size_t>> certificate;
  std::vector<std::string> notes;
};

ConditionReport ball_conditions(std::span<const Rational> a, std::span<const Rational> b);

ConditionReport main3_partial_sums(const RationalSeq& r);

/// Exact CA characterization for (x+a1)/(x+b1), (x+a1)(x+a2)/((x+b1)(x+b2))
/// and (x+a1)(x+a2)/(x+b1). The criterion field names the matched case.
ConditionReport degree2_iff(const RationalSeq& r);

/// CM of (n+a1)/∏(n+b_i) holds iff b1 ≤ a1.
ConditionReport special_case_iff(const Rational& a1, std::span<const Rational> b);

/// CM of (n+a1)(n+a2)/((n+b1)(n+b2)) holds iff b1 ≤ a1 and b1+b2 ≤ a1+a2.
ConditionReport bicase_iff(std::span<const Rational> a, std::span<const Rational> b);

/// Strict interlacing a1 < b1 < a2 < ... (|a| = |b| or |a| = |b| + 1); sufficient for CA.
ConditionReport interlacing_check(std::span<const Rational> a, std::span<const Rational> b);

/// a1<b1<...<a_{k-1}<b_{k-1}<b_k<a_k with a_k ≤ b_k + Σ_{i<k}(b_i - a_i); sufficient for CA.
ConditionReport cnpos_check(std::span<const Rational> a, std::span<const Rational> b);

/// Exhaustive search for σ with σ(1)=1 satisfying every prefix inequality
/// (CM: Σ b_σ ≤ Σ a_σ; CA reversed). Necessary condition; throws BudgetError for k > 10.
ConditionReport perm_necessary(std::span<const Rational> a, std::span<const Rational> b,
                               Property direction);

/// CM: Σb ≤ Σa; CA: Σa ≤ Σb. Necessary condition.
ConditionReport nec_sum_check(std::span<const Rational> a, std::span<const Rational> b,
                              Property direction);

inline constexpr std::size_t kMaxPermutationSize = 10;

}  // namespace cmseq
