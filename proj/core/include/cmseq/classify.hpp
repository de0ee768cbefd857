#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cmseq/criteria.hpp"
#include "cmseq/diff_oracle.hpp"
#include "cmseq/net2d.hpp"
#include "cmseq/partial_fractions.hpp"
#include "cmseq/poly.hpp"
#include "cmseq/weight.hpp"

namespace cmseq {

/// r(x) = p(x) / ∏ (x + b_i) with p either factored or given by coefficients.
struct RatioTarget {
  std::optional<std::vector<Rational>> zero_shifts;
  std::optional<std::vector<Rational>> numerator_coeffs;  // ascending degree
  std::vector<Rational> pole_shifts;
  std::string numerator_text;
  std::string denominator_text;
};

struct NetTarget {
  NetKind kind = NetKind::BiPoly;
  std::vector<Rational> params;  // BiPoly: a,b,c,d; BiComp: (a1,b1), (a1,b1,b2), (a1,a2,b1,b2)
  std::optional<RatioTarget> psi;  // CAJCM only
  Rational alpha{1};
  Rational shift{0};  // constant added to psi before analysis
};

enum class Stage { Decompose, Weight, Conditions, Classify };

struct AnalysisRequest {
  std::variant<RatioTarget, NetTarget> target;
  std::vector<Property> properties{Property::CM, Property::CA};
  Budget1D budget1d;
  Budget2D budget2d;
  std::size_t grid_size = kDefaultGridSize;
  double tol_rel = kDefaultSignTolerance;
  std::optional<std::string> dump_weight_path;
  std::vector<double> exp_check_t;  // CA spot check of exp(-t ψ) when nonempty
  Stage stage = Stage::Classify;
};

enum class VerdictKind { Proved, ProvedNot, EmpiricallySupported, EmpiricallyRefuted, Unknown };

std::string_view to_string(VerdictKind v);

struct PropertyVerdict {
  Property property = Property::CM;
  VerdictKind kind = VerdictKind::Unknown;
  std::string rule;
  std::optional<DiffWitness> witness;  // exact oracle counterexample, when one was found
};

struct Report {
  AnalysisRequest request;
  std::optional<PartialFractions> partial_fractions;
  std::vector<ConditionReport> criteria;
  std::optional<WeightExpression> weight;
  std::optional<SignReport> sign;
  std::vector<DiffReport> oracle;
  std::optional<ExpSpotcheck> exp_check;
  std::optional<CajcmResult> cajcm;
  std::vector<PropertyVerdict> verdicts;
  std::vector<std::string> warnings;
};

/// Validates and builds the sequence; throws InputError on bad input.
RationalSeq build_sequence(const RatioTarget& target);

/// Runs the stages selected by request.stage. Throws InputError (bad input),
/// BudgetError (budget out of range) or InconsistencyError (a proved verdict
/// contradicted by an exact counterexample).
Report classify_command(const AnalysisRequest& request);

/// Canonical JSON: sorted keys, rationals as "p/q" strings.
std::string report_to_json(const Report& report, int indent = 2);
std::string report_to_text(const Report& report);

/// Budget ceilings accepted by classify_command.
inline constexpr std::uint64_t kMaxOrderBudget = 64;
inline constexpr std::uint64_t kMaxShiftBudget = 2000;

}  // namespace cmseq
