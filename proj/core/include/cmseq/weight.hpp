#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cmseq/diff_oracle.hpp"
#include "cmseq/partial_fractions.hpp"
#include "cmseq/rational.hpp"

namespace cmseq {

/// One density term c · t^(b-1) · (-ln t)^j on (0, 1).
struct WeightTerm {
  Rational coefficient;
  Rational exponent;  // b > 0
  unsigned log_power = 0;
  friend bool operator==(const WeightTerm&, const WeightTerm&) = default;
};

/// Representing data of r(n) = atom + linear·n + ∫₀¹ tⁿ w(t) dt with
/// w(t) = Σ c t^(b-1) (-ln t)^j.
///
/// Terms are sorted by (b, j), share no (b, j) pair and carry nonzero
/// coefficients.
struct WeightExpression {
  std::vector<WeightTerm> terms;
  Rational atom_at_one;
  Rational linear_coeff;

  /// Sorts, merges equal (b, j) pairs and drops zero coefficients.
  void canonicalize();
  bool pure_power() const;
  double operator()(double t) const;
};

WeightExpression weight_from_partial_fractions(const PartialFractions& pf);

/// atom + linear·n + Σ c · j! / (n + b)^(j+1), exactly.
Rational moment_reconstruct(const WeightExpression& wx, std::uint64_t n);

enum class SignStatus {
  NonPositiveProved,
  NonNegativeProved,
  NonPositiveSampled,
  NonNegativeSampled,
  MixedSign,
  Inconclusive,
};

enum class ProofRoute { PartialSums, DescartesBound, Sampling };

std::string_view to_string(SignStatus s);
std::string_view to_string(ProofRoute r);

/// A density sample at t = e^(-u). `relative` is w(t) divided by the sum of
/// absolute term magnitudes at t, so it keeps its sign when w underflows.
struct SignSample {
  double t = 0.0;
  double u = 0.0;
  double w = 0.0;
  double relative = 0.0;
};

struct SignReport {
  SignStatus status = SignStatus::Inconclusive;
  ProofRoute proof_route = ProofRoute::Sampling;
  std::vector<SignSample> witnesses;
  double min_sampled = 0.0;
  double max_sampled = 0.0;
  double min_relative = 0.0;
  double max_relative = 0.0;
  std::size_t sample_count = 0;
  int sign_near_zero = 0;  // exact sign of w on some (0, ε)
  int sign_near_one = 0;   // exact sign of w on some (1 - ε, 1)
  std::size_t coefficient_sign_changes = 0;
  std::vector<double> sign_changes;  // approximate t of each located zero crossing
  bool identically_zero = false;

  bool proved() const {
    return status == SignStatus::NonPositiveProved || status == SignStatus::NonNegativeProved;
  }
  /// w ≥ 0 shown by a proof route (or w ≡ 0).
  bool proved_nonnegative() const { return identically_zero || status == SignStatus::NonNegativeProved; }
  bool proved_nonpositive() const { return identically_zero || status == SignStatus::NonPositiveProved; }
};

/// Prefix sums of the coefficients ordered by exponent: all ≤ 0 proves w ≤ 0,
/// all ≥ 0 proves w ≥ 0, otherwise Inconclusive. nullopt when log terms are present.
std::optional<SignReport> partial_sum_sign_test(const WeightExpression& wx);

inline constexpr std::size_t kDefaultGridSize = 8192;
inline constexpr double kDefaultSignTolerance = 1e-12;
inline constexpr double kSignAbsoluteFloor = 1e-300;

/// Partial sums, then coefficient sign changes, then sampling on a uniform
/// t-grid and a uniform u = -ln t grid on (0, 40]. Throws InputError for grid_size < 64.
SignReport sign_analyze(const WeightExpression& wx, std::size_t grid_size = kDefaultGridSize,
                        double tol_rel = kDefaultSignTolerance);

/// Evaluates w at t = e^(-u) without underflow in the common factor.
SignSample sample_at_u(const WeightExpression& wx, double u);

/// Both sampling grids merged and sorted by ascending t.
std::vector<SignSample> weight_samples(const WeightExpression& wx, std::size_t grid_size);

/// `t,w` header, 17 significant digits, LF line endings.
void write_weight_csv(std::ostream& os, std::span<const SignSample> samples);

struct ExpSpotcheck {
  bool passed = true;
  std::vector<double> t_values;
  std::vector<DiffReport> scans;  // one float-mode CM scan per t
  std::vector<std::string> warnings;
};

/// For each t, scans m ↦ exp(-t ψ(m)) for CM in float mode. A CA ψ passes every t.
ExpSpotcheck ca_exp_spotcheck(const FloatSeqFn& psi, std::span<const double> t_values, Budget1D budget = {});

}  // namespace cmseq
