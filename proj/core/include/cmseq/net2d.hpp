#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cmseq/criteria.hpp"
#include "cmseq/diff_oracle.hpp"
#include "cmseq/poly.hpp"
#include "cmseq/rational.hpp"

namespace cmseq {

enum class NetKind { CAJCM, BiPoly, BiPolyWeighted, BiCompI, BiCompII, BiCompIII };

std::string_view to_string(NetKind k);

/// A net f : ℤ₊² → ℚ from one of the supported closed-form families.
///
///   CAJCM           1 / (ψ(m) + α n)
///   BiPoly          1 / (a + b m + c n + d m n)
///   BiPolyWeighted  (c + d m) / (a + b m + c n + d m n)
///   BiCompI         (m+a1) / ((m+b1) + (m+a1) n)
///   BiCompII        (m+a1) / ((m+b1)(m+b2) + (m+a1) n)
///   BiCompIII       (m+a1)(m+a2) / ((m+b1)(m+b2) + (m+a1)(m+a2) n)
///
/// Each BiComp net equals 1 / (ψ(m) + n) for the matching one-variable ψ.
class Net2D {
 public:
  static Net2D cajcm(RationalSeq psi, Rational alpha);
  static Net2D bipoly(Rational a, Rational b, Rational c, Rational d, bool weighted = false);
  static Net2D bicomp_i(Rational a1, Rational b1);
  static Net2D bicomp_ii(Rational a1, Rational b1, Rational b2);
  static Net2D bicomp_iii(Rational a1, Rational a2, Rational b1, Rational b2);

  NetKind kind() const { return kind_; }
  const std::vector<Rational>& params() const { return params_; }
  /// ψ for the CAJCM and BiComp kinds.
  const std::optional<RationalSeq>& psi() const { return psi_; }

  /// Throws InputError when the denominator is not positive at (m, n).
  Rational operator()(std::uint64_t m, std::uint64_t n) const;
  NetFn evaluator() const;
  std::string formula() const;

 private:
  Net2D(NetKind kind, std::vector<Rational> params, std::optional<RationalSeq> psi, Rational alpha);

  NetKind kind_;
  std::vector<Rational> params_;
  std::optional<RationalSeq> psi_;
  Rational alpha_{1};
};

enum class BiCompKind { I, II, III };

/// Exact 2-D CM characterizations of the BiComp nets. Parameters are
/// (a1, b1), (a1, b1, b2) and (a1, a2, b1, b2). Throws InputError on a
/// nonpositive parameter or wrong arity.
ConditionReport bicomp_iff(BiCompKind kind, std::span<const Rational> params);

/// Both BiPoly nets are CM iff ad - bc ≤ 0. Throws InputError unless a > 0 and b, c, d ≥ 0.
ConditionReport bipoly_iff(const Rational& a, const Rational& b, const Rational& c, const Rational& d);

struct CajcmResult {
  /// Iff criterion on ψ when one applies, otherwise an exact CA scan of ψ.
  std::variant<ConditionReport, DiffReport> ca_verdict;
  DiffReport cm2d_verdict;
  /// Exact 2-D violation found outside the rectangular budget by following a
  /// 1-D CA witness (j, m) of ψ along n: ∇_(1,0)^j f(m, n) ≈ -∇^j ψ(m) / n².
  std::optional<DiffWitness> targeted_witness;
  bool psi_is_ca = false;  // per ca_verdict
  bool net_is_cm = false;  // no 2-D violation found, rectangular or targeted
  bool consistent = false;
  std::optional<std::string> warning;
};

/// Classifies ψ for CA and f(m, n) = 1/(ψ(m) + α n) for CM, which must agree.
/// When ψ is not CA and the rectangular scan finds nothing, a targeted search
/// (1-D witness of ψ up to order 64 and shift 2000, then n = 0, 1, 2, 4, ...)
/// looks for the 2-D violation. Throws InputError if ψ(m) ≤ 0 anywhere in the
/// scanned range.
CajcmResult cajcm_classify(const RationalSeq& psi, const Rational& alpha, Budget1D budget1d = {},
                           Budget2D budget2d = {});

}  // namespace cmseq
