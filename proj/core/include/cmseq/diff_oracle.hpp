#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cmseq/rational.hpp"

namespace cmseq {

enum class Property { CM, CA };

std::string_view to_string(Property p);

using SeqFn = std::function<Rational(std::uint64_t)>;
using NetFn = std::function<Rational(std::uint64_t, std::uint64_t)>;
using FloatSeqFn = std::function<double(std::uint64_t)>;

using Point2 = std::array<std::uint64_t, 2>;

struct Budget1D {
  std::uint64_t max_order = 12;
  std::uint64_t max_shift = 50;
};

struct Budget2D {
  std::uint64_t max_order_m = 6;
  std::uint64_t max_order_n = 6;
  std::uint64_t max_shift_m = 20;
  std::uint64_t max_shift_n = 20;
};

enum class Verdict { NoViolationFound, Violation };

struct DiffWitness {
  std::vector<std::uint64_t> orders;  // one entry per generator direction
  std::vector<std::uint64_t> shifts;
  Rational value;  // exact; in float mode the exact value of the computed double
};

/// Outcome of a finite-budget scan of generator differences.
struct DiffReport {
  Property property = Property::CM;
  std::vector<std::uint64_t> max_order;
  std::vector<std::uint64_t> max_shift;
  Verdict verdict = Verdict::NoViolationFound;
  std::optional<DiffWitness> witness;
  bool float_mode = false;

  bool violated() const { return verdict == Verdict::Violation; }
};

/// ∇₁^order φ(shift) = Σ_i (-1)^i C(order, i) φ(shift + i).
Rational forward_diff_1d(const SeqFn& phi, std::uint64_t order, std::uint64_t shift);

/// ∇_{(1,0)}^{j1} ∇_{(0,1)}^{j2} f(m, n).
Rational mixed_diff_2d(const NetFn& f, std::uint64_t j1, std::uint64_t j2, std::uint64_t m,
                       std::uint64_t n);

/// ∇_{a_1} ... ∇_{a_n} φ(s) by inclusion-exclusion over subsets of steps.
Rational forward_diff_general(const SeqFn& phi, std::span<const std::uint64_t> steps,
                              std::uint64_t shift);
Rational forward_diff_general(const NetFn& f, std::span<const Point2> steps, Point2 shift);

/// CM: φ(m) ≥ 0 and ∇^j φ(m) ≥ 0 for 0 ≤ j ≤ N; CA: ∇^j φ(m) ≤ 0 for 1 ≤ j ≤ N;
/// both over 0 ≤ m ≤ M. Reports the first violation in (j, m) order.
DiffReport scan_1d(const SeqFn& phi, Property property, Budget1D budget = {});

/// Mixed generator differences on ℤ₊², first violation in (j1, j2, m, n) order.
DiffReport scan_2d(const NetFn& f, Property property, Budget2D budget = {});

/// Float counterpart of scan_1d using compensated summation. A difference
/// counts as zero when |value| ≤ tol_rel · (largest term magnitude).
DiffReport scan_1d_float(const FloatSeqFn& phi, Property property, Budget1D budget = {},
                         double tol_rel = 1e-12);

/// Recomputes the witness difference from its definition.
Rational reevaluate_witness(const SeqFn& phi, const DiffWitness& w);
Rational reevaluate_witness(const NetFn& f, const DiffWitness& w);

}  // namespace cmseq
