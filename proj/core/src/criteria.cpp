#include "cmseq/criteria.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

#include "cmseq/errors.hpp"
#include "cmseq/partial_fractions.hpp"

namespace cmseq {

std::string_view to_string(Criterion c) {
  switch (c) {
    case Criterion::Ball: return "Ball";
    case Criterion::Main3PartialSums: return "Main3PartialSums";
    case Criterion::Main1PermCM: return "Main1PermCM";
    case Criterion::Main1PermCA: return "Main1PermCA";
    case Criterion::CARoot1: return "CARoot1";
    case Criterion::CARoot2: return "CARoot2";
    case Criterion::CARoot2b: return "CARoot2b";
    case Criterion::SpecialCase: return "SpecialCase";
    case Criterion::BiCase: return "BiCase";
    case Criterion::CAExInterlace: return "CAExInterlace";
    case Criterion::CnPos: return "CnPos";
    case Criterion::NecCondSumCM: return "NecCondSumCM";
    case Criterion::NecCondSumCA: return "NecCondSumCA";
    case Criterion::BiCompI: return "BiCompI";
    case Criterion::BiCompII: return "BiCompII";
    case Criterion::BiCompIII: return "BiCompIII";
    case Criterion::BiPoly: return "BiPoly";
  }
  return "?";
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Holds: return "Holds";
    case Status::Fails: return "Fails";
    case Status::NotApplicable: return "NotApplicable";
  }
  return "?";
}

Strength strength_of(Criterion c) {
  switch (c) {
    case Criterion::Ball:
    case Criterion::Main3PartialSums:
    case Criterion::CAExInterlace:
    case Criterion::CnPos:
      return Strength::Sufficient;
    case Criterion::Main1PermCM:
    case Criterion::Main1PermCA:
    case Criterion::NecCondSumCM:
    case Criterion::NecCondSumCA:
      return Strength::Necessary;
    default:
      return Strength::Iff;
  }
}

Property property_of(Criterion c) {
  switch (c) {
    case Criterion::Main3PartialSums:
    case Criterion::Main1PermCA:
    case Criterion::CARoot1:
    case Criterion::CARoot2:
    case Criterion::CARoot2b:
    case Criterion::CAExInterlace:
    case Criterion::CnPos:
    case Criterion::NecCondSumCA:
      return Property::CA;
    default:
      return Property::CM;
  }
}

namespace {

class ReportBuilder {
 public:
  explicit ReportBuilder(Criterion c) { report_.criterion = c; }

  bool check(std::string label, Rational lhs, Relation rel, Rational rhs) {
    const bool ok = rel == Relation::LessEq ? lhs <= rhs : lhs < rhs;
    report_.detail.push_back(Inequality{std::move(label), std::move(lhs), rel, std::move(rhs), ok});
    return ok;
  }

  void note(std::string text) { report_.notes.push_back(std::move(text)); }

  ConditionReport finish() && {
    const bool all = std::all_of(report_.detail.begin(), report_.detail.end(),
                                 [](const Inequality& q) { return q.holds; });
    report_.status = all ? Status::Holds : Status::Fails;
    return std::move(report_);
  }

  ConditionReport& raw() { return report_; }

 private:
  ConditionReport report_;
};

ConditionReport not_applicable(Criterion c, std::string why) {
  ConditionReport r;
  r.criterion = c;
  r.status = Status::NotApplicable;
  r.notes.push_back(std::move(why));
  return r;
}

struct Sorted {
  std::vector<Rational> values;
  std::vector<std::size_t> positions;  // 1-based original index of each sorted value
};

Sorted sort_with_positions(std::span<const Rational> v) {
  Sorted s;
  s.positions.resize(v.size());
  std::iota(s.positions.begin(), s.positions.end(), std::size_t{1});
  std::stable_sort(s.positions.begin(), s.positions.end(),
                   [&](std::size_t i, std::size_t j) { return v[i - 1] < v[j - 1]; });
  for (auto p : s.positions) s.values.push_back(v[p - 1]);
  return s;
}

std::string positions_note(std::string_view name, const Sorted& s) {
  std::ostringstream os;
  os << name << " sorted ascending from original positions (";
  for (std::size_t i = 0; i < s.positions.size(); ++i) os << (i ? "," : "") << s.positions[i];
  os << ")";
  return os.str();
}

bool all_positive(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.sign() > 0; });
}

std::string idx(std::string_view name, std::size_t i) { return std::string(name) + std::to_string(i); }

}  // namespace

ConditionReport ball_conditions(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw InputError("ball_conditions: |a| != |b|");
  if (a.empty()) throw InputError("ball_conditions: k must be at least 1");
  if (!all_positive(a) || !all_positive(b))
    return not_applicable(Criterion::Ball, "zero and pole shifts must be positive");
  const auto sa = sort_with_positions(a);
  const auto sb = sort_with_positions(b);
  ReportBuilder rb(Criterion::Ball);
  Rational sum_a, sum_b;
  for (std::size_t l = 0; l < a.size(); ++l) {
    sum_a += sa.values[l];
    sum_b += sb.values[l];
    rb.check("sum b[1.." + std::to_string(l + 1) + "] <= sum a[1.." + std::to_string(l + 1) + "]",
             sum_b, Relation::LessEq, sum_a);
  }
  rb.note(positions_note("a", sa));
  rb.note(positions_note("b", sb));
  return std::move(rb).finish();
}

ConditionReport main3_partial_sums(const RationalSeq& r) {
  const std::size_t k = r.pole_count();
  if (k == 0) return not_applicable(Criterion::Main3PartialSums, "no poles");
  if (!r.has_simple_poles())
    return not_applicable(Criterion::Main3PartialSums, "repeated poles; the partial-sum criterion needs simple poles");
  const Rational top = r.numerator().coefficient(k + 1);
  if (top.sign() < 0)
    return not_applicable(Criterion::Main3PartialSums, "coefficient of x^(k+1) is negative");

  const auto pf = partial_fractions(r);
  ReportBuilder rb(Criterion::Main3PartialSums);
  Rational prefix;
  for (std::size_t l = 0; l < pf.terms.size(); ++l) {
    prefix += pf.terms[l].coefficient;
    rb.check("c1+...+c" + std::to_string(l + 1) + " <= 0", prefix, Relation::LessEq, Rational(0));
  }

  if (const auto& zeros = r.zero_shifts()) {
    // Sign of each c_i read off the product form ∏(a_l - b_i) / ∏_{j≠i}(b_j - b_i).
    for (std::size_t i = 0; i < pf.terms.size(); ++i) {
      const Rational& bi = pf.terms[i].pole;
      Rational num(1), den(1);
      int neg_num = 0, neg_den = 0;
      for (const auto& a : *zeros) {
        num *= a - bi;
        if (a < bi) ++neg_num;
      }
      for (std::size_t j = 0; j < pf.terms.size(); ++j) {
        if (j == i) continue;
        den *= pf.terms[j].pole - bi;
        if (pf.terms[j].pole < bi) ++neg_den;
      }
      std::ostringstream os;
      os << "c" << i + 1 << " = " << pf.terms[i].coefficient << " at b=" << bi << ": " << neg_num
         << " zero shift(s) below b and " << neg_den << " pole(s) below b give sign "
         << (num.is_zero() ? "0" : ((neg_num + neg_den) % 2 ? "-" : "+"));
      rb.note(os.str());
    }
  }
  return std::move(rb).finish();
}

ConditionReport degree2_iff(const RationalSeq& r) {
  const auto& zeros = r.zero_shifts();
  if (!zeros) return not_applicable(Criterion::CARoot1, "numerator not given in factored form");
  const std::size_t nz = zeros->size();
  const std::size_t k = r.pole_count();
  const auto b = r.pole_shifts();

  if (nz == 1 && k == 1) {
    ReportBuilder rb(Criterion::CARoot1);
    rb.check("a1 <= b1", (*zeros)[0], Relation::LessEq, b[0]);
    return std::move(rb).finish();
  }
  if (nz == 2 && k == 2) {
    const Rational &a1 = (*zeros)[0], &a2 = (*zeros)[1];
    ReportBuilder rb(Criterion::CARoot2);
    rb.check("a1 <= b1", a1, Relation::LessEq, b[0]);
    rb.check("b1 <= a2", b[0], Relation::LessEq, a2);
    rb.check("a1+a2 <= b1+b2", a1 + a2, Relation::LessEq, b[0] + b[1]);
    if (b[0] == b[1]) {
      // Double pole: density (c1 - c2 ln t) t^(b1-1) is nonpositive iff c1 ≤ 0 and c2 ≤ 0.
      const Rational c1 = a1 + a2 - 2 * b[0];
      const Rational c2 = (a1 - b[0]) * (a2 - b[0]);
      std::ostringstream os;
      os << "double pole: log-weight coefficients c1 = " << c1 << ", c2 = " << c2
         << (c1.sign() <= 0 && c2.sign() <= 0 ? " (both <= 0)" : " (not both <= 0)");
      rb.note(os.str());
    }
    return std::move(rb).finish();
  }
  if (nz == 2 && k == 1) {
    ReportBuilder rb(Criterion::CARoot2b);
    rb.check("a1 <= b1", (*zeros)[0], Relation::LessEq, b[0]);
    rb.check("b1 <= a2", b[0], Relation::LessEq, (*zeros)[1]);
    return std::move(rb).finish();
  }
  return not_applicable(Criterion::CARoot1,
                        "shape is not (x+a1)/(x+b1), (x+a1)(x+a2)/((x+b1)(x+b2)) or (x+a1)(x+a2)/(x+b1)");
}

ConditionReport special_case_iff(const Rational& a1, std::span<const Rational> b) {
  if (b.empty()) throw InputError("special_case_iff: need at least one pole");
  if (a1.sign() <= 0 || !all_positive(b))
    return not_applicable(Criterion::SpecialCase, "zero and pole shifts must be positive");
  const Rational b1 = *std::min_element(b.begin(), b.end());
  ReportBuilder rb(Criterion::SpecialCase);
  rb.check("b1 <= a1", b1, Relation::LessEq, a1);
  return std::move(rb).finish();
}

ConditionReport bicase_iff(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != 2 || b.size() != 2) throw InputError("bicase_iff: need exactly two zeros and two poles");
  if (!all_positive(a) || !all_positive(b)) throw InputError("bicase_iff: shifts must be positive");
  if (a[1] < a[0] || b[1] < b[0]) throw InputError("bicase_iff: shifts must be non-decreasing");
  ReportBuilder rb(Criterion::BiCase);
  rb.check("b1 <= a1", b[0], Relation::LessEq, a[0]);
  rb.check("b1+b2 <= a1+a2", b[0] + b[1], Relation::LessEq, a[0] + a[1]);
  return std::move(rb).finish();
}

ConditionReport interlacing_check(std::span<const Rational> a, std::span<const Rational> b) {
  if (b.empty() || (a.size() != b.size() && a.size() != b.size() + 1))
    throw InputError("interlacing_check: need |a| = |b| or |a| = |b| + 1 with |b| >= 1");
  ReportBuilder rb(Criterion::CAExInterlace);
  rb.check("0 < a1", Rational(0), Relation::Less, a[0]);
  for (std::size_t i = 0; i < b.size(); ++i) {
    rb.check(idx("a", i + 1) + " < " + idx("b", i + 1), a[i], Relation::Less, b[i]);
    if (i + 1 < a.size())
      rb.check(idx("b", i + 1) + " < " + idx("a", i + 2), b[i], Relation::Less, a[i + 1]);
  }
  // Bridging sequences whose CA status would make the condition necessary.
  const bool bridges = all_positive(b);
  for (std::size_t i = 0; bridges && i + 1 < a.size() && i < b.size(); ++i) {
    auto bridge = degree2_iff(RationalSeq::factored({a[i], a[i + 1]}, {b[i]}));
    std::ostringstream os;
    os << "bridge (n+" << a[i] << ")(n+" << a[i + 1] << ")/(n+" << b[i] << "): CA "
       << to_string(bridge.status);
    rb.note(os.str());
  }
  if (bridges && a.size() == b.size()) {
    auto bridge = degree2_iff(RationalSeq::factored({a.back()}, {b.back()}));
    std::ostringstream os;
    os << "bridge (n+" << a.back() << ")/(n+" << b.back() << "): CA " << to_string(bridge.status);
    rb.note(os.str());
  }
  rb.note("sufficient for CA only; the converse needs every bridge to be CA");
  return std::move(rb).finish();
}

ConditionReport cnpos_check(std::span<const Rational> a, std::span<const Rational> b) {
  const std::size_t k = a.size();
  if (k < 2 || b.size() != k) return not_applicable(Criterion::CnPos, "need |a| = |b| = k >= 2");
  ReportBuilder rb(Criterion::CnPos);
  std::vector<std::pair<std::string, Rational>> chain{{"0", Rational(0)}};
  for (std::size_t i = 0; i + 1 < k; ++i) {
    chain.emplace_back(idx("a", i + 1), a[i]);
    chain.emplace_back(idx("b", i + 1), b[i]);
  }
  chain.emplace_back(idx("b", k), b[k - 1]);
  chain.emplace_back(idx("a", k), a[k - 1]);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    rb.check(chain[i].first + " < " + chain[i + 1].first, chain[i].second, Relation::Less,
             chain[i + 1].second);
  Rational bound = b[k - 1];
  for (std::size_t i = 0; i + 1 < k; ++i) bound += b[i] - a[i];
  rb.check(idx("a", k) + " <= " + idx("b", k) + " + sum(b_i - a_i, i<k)", a[k - 1], Relation::LessEq, bound);
  return std::move(rb).finish();
}

ConditionReport perm_necessary(std::span<const Rational> a, std::span<const Rational> b,
                               Property direction) {
  const Criterion crit = direction == Property::CM ? Criterion::Main1PermCM : Criterion::Main1PermCA;
  if (a.size() != b.size() || a.empty()) throw InputError("perm_necessary: need |a| = |b| >= 1");
  if (a.size() > kMaxPermutationSize)
    throw BudgetError("perm_necessary: k = " + std::to_string(a.size()) + " exceeds the exhaustive-search cap of " +
                      std::to_string(kMaxPermutationSize));
  if (!all_positive(a) || !all_positive(b)) return not_applicable(crit, "zero and pole shifts must be positive");

  const auto sa = sort_with_positions(a);
  const auto sb = sort_with_positions(b);
  const std::size_t k = a.size();
  // Lower side of each prefix inequality.
  const auto& small = direction == Property::CM ? sb.values : sa.values;
  const auto& large = direction == Property::CM ? sa.values : sb.values;

  auto satisfies = [&](const std::vector<std::size_t>& sigma) {
    Rational lo, hi;
    for (std::size_t l = 0; l < k; ++l) {
      lo += small[sigma[l]];
      hi += large[sigma[l]];
      if (lo > hi) return false;
    }
    return true;
  };

  std::vector<std::size_t> sigma(k);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  std::optional<std::vector<std::size_t>> found;
  do {
    if (satisfies(sigma)) {
      found = sigma;
      break;
    }
  } while (std::next_permutation(sigma.begin() + 1, sigma.end()));

  const auto& shown = found ? *found : [&] {
    std::vector<std::size_t> id(k);
    std::iota(id.begin(), id.end(), std::size_t{0});
    return id;
  }();
  ReportBuilder rb(crit);
  Rational lo, hi;
  const char* lo_name = direction == Property::CM ? "b" : "a";
  const char* hi_name = direction == Property::CM ? "a" : "b";
  for (std::size_t l = 0; l < k; ++l) {
    lo += small[shown[l]];
    hi += large[shown[l]];
    rb.check("sum " + std::string(lo_name) + "_sigma[1.." + std::to_string(l + 1) + "] <= sum " + hi_name +
                 "_sigma[1.." + std::to_string(l + 1) + "]",
             lo, Relation::LessEq, hi);
  }
  rb.note(positions_note("a", sa));
  rb.note(positions_note("b", sb));
  if (found) {
    std::vector<std::size_t> one_based;
    for (auto s : *found) one_based.push_back(s + 1);
    rb.raw().certificate = std::move(one_based);
  } else {
    rb.note("no sigma with sigma(1)=1 satisfies every prefix inequality; detail shows the identity");
  }
  return std::move(rb).finish();
}

ConditionReport nec_sum_check(std::span<const Rational> a, std::span<const Rational> b, Property direction) {
  const Criterion crit = direction == Property::CM ? Criterion::NecCondSumCM : Criterion::NecCondSumCA;
  if (a.size() != b.size() || a.empty()) return not_applicable(crit, "need |a| = |b| >= 1");
  const Rational sa = std::accumulate(a.begin(), a.end(), Rational(0));
  const Rational sb = std::accumulate(b.begin(), b.end(), Rational(0));
  ReportBuilder rb(crit);
  if (direction == Property::CM)
    rb.check("sum b <= sum a", sb, Relation::LessEq, sa);
  else
    rb.check("sum a <= sum b", sa, Relation::LessEq, sb);
  return std::move(rb).finish();
}

}  // namespace cmseq
