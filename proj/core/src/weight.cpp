#include "cmseq/weight.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "cmseq/errors.hpp"

namespace cmseq {

std::string_view to_string(SignStatus s) {
  switch (s) {
    case SignStatus::NonPositiveProved: return "NonPositiveProved";
    case SignStatus::NonNegativeProved: return "NonNegativeProved";
    case SignStatus::NonPositiveSampled: return "NonPositiveSampled";
    case SignStatus::NonNegativeSampled: return "NonNegativeSampled";
    case SignStatus::MixedSign: return "MixedSign";
    case SignStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string_view to_string(ProofRoute r) {
  switch (r) {
    case ProofRoute::PartialSums: return "PartialSums";
    case ProofRoute::DescartesBound: return "DescartesBound";
    case ProofRoute::Sampling: return "Sampling";
  }
  return "?";
}

void WeightExpression::canonicalize() {
  std::sort(terms.begin(), terms.end(), [](const WeightTerm& x, const WeightTerm& y) {
    if (x.exponent != y.exponent) return x.exponent < y.exponent;
    return x.log_power < y.log_power;
  });
  std::vector<WeightTerm> merged;
  for (auto& t : terms) {
    if (!merged.empty() && merged.back().exponent == t.exponent && merged.back().log_power == t.log_power)
      merged.back().coefficient += t.coefficient;
    else
      merged.push_back(std::move(t));
  }
  std::erase_if(merged, [](const WeightTerm& t) { return t.coefficient.is_zero(); });
  terms = std::move(merged);
}

bool WeightExpression::pure_power() const {
  return std::all_of(terms.begin(), terms.end(), [](const WeightTerm& t) { return t.log_power == 0; });
}

double WeightExpression::operator()(double t) const {
  if (!(t > 0.0 && t <= 1.0)) throw std::domain_error("weight evaluated outside (0, 1]");
  const double u = -std::log(t);
  double acc = 0.0;
  for (const auto& term : terms)
    acc += term.coefficient.to_double() * std::pow(t, term.exponent.to_double() - 1.0) *
           std::pow(u, static_cast<double>(term.log_power));
  return acc;
}

WeightExpression weight_from_partial_fractions(const PartialFractions& pf) {
  WeightExpression wx;
  wx.atom_at_one = pf.a0;
  wx.linear_coeff = pf.a1;
  for (const auto& t : pf.terms) {
    // c/(x+b)^m = c/(m-1)! · ∫ tⁿ t^(b-1) (-ln t)^(m-1) dt
    const unsigned j = t.order - 1;
    wx.terms.push_back(WeightTerm{t.coefficient / Rational(factorial(j)), t.pole, j});
  }
  wx.canonicalize();
  return wx;
}

Rational moment_reconstruct(const WeightExpression& wx, std::uint64_t n) {
  Rational acc = wx.atom_at_one + wx.linear_coeff * Rational(n);
  for (const auto& t : wx.terms)
    acc += t.coefficient * Rational(factorial(t.log_power)) / pow(Rational(n) + t.exponent, t.log_power + 1);
  return acc;
}

namespace {

int sign_of(const Rational& x) { return x.sign(); }

std::size_t count_sign_changes(const WeightExpression& wx) {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& t : wx.terms) {
    const int s = sign_of(t.coefficient);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Sign of w on (0, ε): the smallest exponent dominates, and within it the
// highest power of -ln t.
int exact_sign_near_zero(const WeightExpression& wx) {
  if (wx.terms.empty()) return 0;
  const Rational& b0 = wx.terms.front().exponent;
  const WeightTerm* dom = &wx.terms.front();
  for (const auto& t : wx.terms)
    if (t.exponent == b0) dom = &t;
  return sign_of(dom->coefficient);
}

// Sign of w on (1-ε, 1) from the first nonzero Taylor coefficient of
// Σ c e^{-(b-1)u} u^j at u = 0.
int exact_sign_near_one(const WeightExpression& wx) {
  if (wx.terms.empty()) return 0;
  // An exponential polynomial with D degrees of freedom vanishes to order < D.
  std::size_t dof = 0;
  for (std::size_t i = 0; i < wx.terms.size(); ++i)
    if (i + 1 == wx.terms.size() || wx.terms[i + 1].exponent != wx.terms[i].exponent)
      dof += wx.terms[i].log_power + 1;
  for (std::size_t m = 0; m <= dof; ++m) {
    Rational coef;
    for (const auto& t : wx.terms) {
      if (t.log_power > m) continue;
      const unsigned p = static_cast<unsigned>(m - t.log_power);
      coef += t.coefficient * pow(Rational(1) - t.exponent, p) / Rational(factorial(p));
    }
    if (!coef.is_zero()) return sign_of(coef);
  }
  return 0;
}

bool significant(const SignSample& s, double tol_rel) {
  return std::fabs(s.relative) > tol_rel;
}

}  // namespace

std::optional<SignReport> partial_sum_sign_test(const WeightExpression& wx) {
  if (!wx.pure_power()) return std::nullopt;
  SignReport rep;
  rep.proof_route = ProofRoute::PartialSums;
  rep.coefficient_sign_changes = count_sign_changes(wx);
  rep.sign_near_zero = exact_sign_near_zero(wx);
  rep.sign_near_one = exact_sign_near_one(wx);
  if (wx.terms.empty()) {
    rep.identically_zero = true;
    rep.status = SignStatus::NonNegativeProved;
    return rep;
  }
  bool all_nonpos = true, all_nonneg = true;
  Rational prefix;
  for (const auto& t : wx.terms) {
    prefix += t.coefficient;
    if (prefix.sign() > 0) all_nonpos = false;
    if (prefix.sign() < 0) all_nonneg = false;
  }
  if (all_nonpos)
    rep.status = SignStatus::NonPositiveProved;
  else if (all_nonneg)
    rep.status = SignStatus::NonNegativeProved;
  else
    rep.status = SignStatus::Inconclusive;
  return rep;
}

SignSample sample_at_u(const WeightExpression& wx, double u) {
  SignSample s;
  s.u = u;
  s.t = std::exp(-u);
  if (wx.terms.empty()) return s;
  const double b0 = wx.terms.front().exponent.to_double();
  double g = 0.0, scale = 0.0;
  for (const auto& t : wx.terms) {
    double term = t.coefficient.to_double() * std::exp(-(t.exponent.to_double() - b0) * u);
    if (t.log_power > 0) term *= std::pow(u, static_cast<double>(t.log_power));
    g += term;
    scale += std::fabs(term);
  }
  s.relative = scale > kSignAbsoluteFloor ? g / scale : 0.0;
  // w = e^{-(b0-1)u} g, computed in log space to postpone overflow.
  if (g != 0.0) {
    const double log_w = std::log(std::fabs(g)) - (b0 - 1.0) * u;
    const double mag = log_w > std::log(DBL_MAX) ? DBL_MAX : std::exp(log_w);
    s.w = g > 0 ? mag : -mag;
  }
  return s;
}

std::vector<SignSample> weight_samples(const WeightExpression& wx, std::size_t grid_size) {
  std::vector<SignSample> out;
  out.reserve(2 * grid_size);
  for (std::size_t i = 1; i <= grid_size; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(grid_size + 1);
    auto s = sample_at_u(wx, -std::log(t));
    s.t = t;
    out.push_back(s);
  }
  constexpr double kMaxU = 40.0;
  for (std::size_t i = 1; i <= grid_size; ++i)
    out.push_back(sample_at_u(wx, kMaxU * static_cast<double>(i) / static_cast<double>(grid_size)));
  std::sort(out.begin(), out.end(), [](const SignSample& a, const SignSample& b) { return a.t < b.t; });
  return out;
}

SignReport sign_analyze(const WeightExpression& wx, std::size_t grid_size, double tol_rel) {
  if (grid_size < 64) throw InputError("sign_analyze: grid_size must be at least 64");

  SignReport rep;
  rep.coefficient_sign_changes = count_sign_changes(wx);
  rep.sign_near_zero = exact_sign_near_zero(wx);
  rep.sign_near_one = exact_sign_near_one(wx);
  if (wx.terms.empty()) {
    rep.identically_zero = true;
    rep.status = SignStatus::NonNegativeProved;
    rep.proof_route = ProofRoute::DescartesBound;
    return rep;
  }

  // Proof routes. Zero coefficient sign changes fixes the sign outright, with
  // or without log factors, since t^(b-1)(-ln t)^j > 0 on (0, 1).
  if (auto ps = partial_sum_sign_test(wx); ps && ps->proved()) {
    rep.status = ps->status;
    rep.proof_route = ProofRoute::PartialSums;
  } else if (rep.coefficient_sign_changes == 0) {
    rep.status = wx.terms.front().coefficient.sign() > 0 ? SignStatus::NonNegativeProved
                                                         : SignStatus::NonPositiveProved;
    rep.proof_route = ProofRoute::DescartesBound;
  }

  auto samples = weight_samples(wx, grid_size);

  // Targeted samples inside the exactly known endpoint sign regions.
  if (rep.sign_near_zero != 0) {
    for (double u = 80.0; u <= 1e7; u *= 2.0) {
      const auto s = sample_at_u(wx, u);
      samples.push_back(s);
      if (significant(s, tol_rel) && (s.relative > 0) == (rep.sign_near_zero > 0)) break;
    }
  }
  if (rep.sign_near_one != 0) {
    for (double u = 0.5; u > 1e-18; u *= 0.5) {
      const auto s = sample_at_u(wx, u);
      samples.push_back(s);
      if (significant(s, tol_rel) && (s.relative > 0) == (rep.sign_near_one > 0)) break;
    }
  }
  std::sort(samples.begin(), samples.end(), [](const SignSample& a, const SignSample& b) { return a.u > b.u; });
  rep.sample_count = samples.size();

  const SignSample* most_neg = nullptr;
  const SignSample* most_pos = nullptr;
  rep.min_sampled = rep.max_sampled = samples.front().w;
  rep.min_relative = rep.max_relative = samples.front().relative;
  for (const auto& s : samples) {
    rep.min_sampled = std::min(rep.min_sampled, s.w);
    rep.max_sampled = std::max(rep.max_sampled, s.w);
    rep.min_relative = std::min(rep.min_relative, s.relative);
    rep.max_relative = std::max(rep.max_relative, s.relative);
    if (!significant(s, tol_rel)) continue;
    if (s.relative < 0 && (!most_neg || s.relative < most_neg->relative)) most_neg = &s;
    if (s.relative > 0 && (!most_pos || s.relative > most_pos->relative)) most_pos = &s;
  }

  // Locate zero crossings between consecutive significant samples of opposite sign.
  const SignSample* prev = nullptr;
  for (const auto& s : samples) {
    if (!significant(s, tol_rel)) continue;
    if (prev && (prev->relative > 0) != (s.relative > 0) && rep.sign_changes.size() < 64) {
      double lo = prev->u, hi = s.u;  // lo > hi in u
      const bool lo_pos = prev->relative > 0;
      for (int it = 0; it < 100 && lo - hi > 1e-15 * std::max(1.0, lo); ++it) {
        const double mid = 0.5 * (lo + hi);
        const auto m = sample_at_u(wx, mid);
        if ((m.relative > 0) == lo_pos)
          lo = mid;
        else
          hi = mid;
      }
      rep.sign_changes.push_back(std::exp(-0.5 * (lo + hi)));
    }
    prev = &s;
  }

  if (most_neg) rep.witnesses.push_back(*most_neg);
  if (most_pos) rep.witnesses.push_back(*most_pos);
  // Witnesses closest to each endpoint with the endpoint's sign.
  for (auto it = samples.begin(); it != samples.end(); ++it) {
    if (significant(*it, tol_rel) && rep.sign_near_zero != 0 && (it->relative > 0) == (rep.sign_near_zero > 0)) {
      if (&*it != most_neg && &*it != most_pos) rep.witnesses.push_back(*it);
      break;
    }
  }
  for (auto it = samples.rbegin(); it != samples.rend(); ++it) {
    if (significant(*it, tol_rel) && rep.sign_near_one != 0 && (it->relative > 0) == (rep.sign_near_one > 0)) {
      if (&*it != most_neg && &*it != most_pos) rep.witnesses.push_back(*it);
      break;
    }
  }

  const bool pos = most_pos != nullptr;
  const bool neg = most_neg != nullptr;
  if (rep.proved()) {
    const bool contradicted = rep.status == SignStatus::NonPositiveProved ? pos : neg;
    if (contradicted)
      throw InconsistencyError("sign_analyze: sampling contradicts a proved sign (numerical tolerance too tight?)");
    return rep;
  }
  rep.proof_route = ProofRoute::Sampling;
  if (pos && neg)
    rep.status = SignStatus::MixedSign;
  else if (neg)
    rep.status = SignStatus::NonPositiveSampled;
  else if (pos)
    rep.status = SignStatus::NonNegativeSampled;
  else
    rep.status = SignStatus::Inconclusive;
  return rep;
}

void write_weight_csv(std::ostream& os, std::span<const SignSample> samples) {
  os << "t,w\n";
  char buf[64];
  for (const auto& s : samples) {
    std::snprintf(buf, sizeof buf, "%.17g,", s.t);
    os << buf;
    std::snprintf(buf, sizeof buf, "%.17g\n", s.w);
    os << buf;
  }
}

ExpSpotcheck ca_exp_spotcheck(const FloatSeqFn& psi, std::span<const double> t_values, Budget1D budget) {
  ExpSpotcheck out;
  // Differences of order N sum at most 2^N terms of the largest magnitude.
  const double max_exponent = std::log(DBL_MAX) - static_cast<double>(budget.max_order + 1) * std::log(2.0);
  for (const double t : t_values) {
    if (!(t > 0.0)) throw InputError("ca_exp_spotcheck: t must be positive");
    bool clamped = false;
    const FloatSeqFn phi = [&](std::uint64_t m) {
      double e = -t * psi(m);
      if (e > max_exponent) {
        e = max_exponent;
        clamped = true;
      }
      return std::exp(e);
    };
    auto scan = scan_1d_float(phi, Property::CM, budget);
    if (clamped) out.warnings.push_back("exp(-t*psi) overflowed and was clamped at t = " + std::to_string(t));
    if (scan.violated()) out.passed = false;
    out.t_values.push_back(t);
    out.scans.push_back(std::move(scan));
  }
  return out;
}

}  // namespace cmseq
