#include "cmseq/classify.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cmseq/errors.hpp"

namespace cmseq {

std::string_view to_string(VerdictKind v) {
  switch (v) {
    case VerdictKind::Proved: return "Proved";
    case VerdictKind::ProvedNot: return "ProvedNot";
    case VerdictKind::EmpiricallySupported: return "EmpiricallySupported";
    case VerdictKind::EmpiricallyRefuted: return "EmpiricallyRefuted";
    case VerdictKind::Unknown: return "Unknown";
  }
  return "?";
}

RationalSeq build_sequence(const RatioTarget& target) {
  if (target.zero_shifts && target.numerator_coeffs)
    throw InputError("give the numerator either factored or by coefficients, not both");
  if (target.zero_shifts) return RationalSeq::factored(*target.zero_shifts, target.pole_shifts);
  if (target.numerator_coeffs) return RationalSeq(Poly(*target.numerator_coeffs), target.pole_shifts);
  throw InputError("missing numerator");
}

namespace {

void validate_budgets(const AnalysisRequest& req) {
  auto check = [](std::uint64_t v, std::uint64_t cap, const char* name, bool allow_zero) {
    if ((!allow_zero && v < 1) || v > cap)
      throw BudgetError(std::string(name) + " = " + std::to_string(v) + " is outside [" + (allow_zero ? "0" : "1") +
                        ", " + std::to_string(cap) + "]");
  };
  check(req.budget1d.max_order, kMaxOrderBudget, "max order", false);
  check(req.budget1d.max_shift, kMaxShiftBudget, "max shift", true);
  check(req.budget2d.max_order_m, kMaxOrderBudget, "2-D max order (m)", true);
  check(req.budget2d.max_order_n, kMaxOrderBudget, "2-D max order (n)", true);
  check(req.budget2d.max_shift_m, kMaxShiftBudget, "2-D max shift (m)", true);
  check(req.budget2d.max_shift_n, kMaxShiftBudget, "2-D max shift (n)", true);
  if (req.budget2d.max_order_m + req.budget2d.max_order_n < 1) throw BudgetError("2-D total order budget must be >= 1");
  if (req.grid_size < 64) throw BudgetError("grid size must be at least 64");
  if (!(req.tol_rel >= 0.0 && req.tol_rel < 1.0)) throw InputError("tolerance must lie in [0, 1)");
}

bool all_positive(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.sign() > 0; });
}

ConditionReport na(Criterion c, std::string why) {
  ConditionReport r;
  r.criterion = c;
  r.status = Status::NotApplicable;
  r.notes.push_back(std::move(why));
  return r;
}

std::vector<ConditionReport> ratio_criteria(const RationalSeq& r, std::vector<std::string>& warnings) {
  std::vector<ConditionReport> out;
  const auto& zeros = r.zero_shifts();
  const auto b = r.pole_shifts();
  const std::size_t k = b.size();
  const bool factored = zeros.has_value();
  const std::vector<Rational> a = factored ? *zeros : std::vector<Rational>{};
  const bool square = factored && a.size() == k && k >= 1;
  const bool positive = factored && all_positive(a) && all_positive(b);
  const std::string need_square = "needs a factored numerator with as many zeros as poles";

  out.push_back(square ? ball_conditions(a, b) : na(Criterion::Ball, need_square));
  out.push_back(main3_partial_sums(r));

  for (Property dir : {Property::CM, Property::CA}) {
    const Criterion c = dir == Property::CM ? Criterion::Main1PermCM : Criterion::Main1PermCA;
    if (!square) {
      out.push_back(na(c, need_square));
    } else if (k > kMaxPermutationSize) {
      out.push_back(na(c, "k exceeds the exhaustive permutation search cap"));
      warnings.push_back(std::string(to_string(c)) + " skipped: k = " + std::to_string(k) + " > " +
                         std::to_string(kMaxPermutationSize));
    } else {
      out.push_back(perm_necessary(a, b, dir));
    }
  }

  const auto d2 = degree2_iff(r);
  for (Criterion c : {Criterion::CARoot1, Criterion::CARoot2, Criterion::CARoot2b}) {
    if (d2.status != Status::NotApplicable && d2.criterion == c)
      out.push_back(d2);
    else
      out.push_back(na(c, "shape does not match this case"));
  }

  if (factored && a.size() == 1 && k >= 1)
    out.push_back(special_case_iff(a[0], b));
  else
    out.push_back(na(Criterion::SpecialCase, "needs numerator (x+a1) over at least one pole"));

  if (factored && a.size() == 2 && k == 2 && positive)
    out.push_back(bicase_iff(a, b));
  else
    out.push_back(na(Criterion::BiCase, "needs (x+a1)(x+a2)/((x+b1)(x+b2)) with positive shifts"));

  if (factored && k >= 1 && (a.size() == k || a.size() == k + 1))
    out.push_back(interlacing_check(a, b));
  else
    out.push_back(na(Criterion::CAExInterlace, "needs k or k+1 factored zeros over k poles"));

  out.push_back(square ? cnpos_check(a, b) : na(Criterion::CnPos, need_square));

  for (Property dir : {Property::CM, Property::CA}) {
    const Criterion c = dir == Property::CM ? Criterion::NecCondSumCM : Criterion::NecCondSumCA;
    if (square && positive)
      out.push_back(nec_sum_check(a, b, dir));
    else
      out.push_back(na(c, need_square + " (positive shifts)"));
  }
  return out;
}

std::string budget_text(const DiffReport& d) {
  std::ostringstream os;
  os << "order <= (";
  for (std::size_t i = 0; i < d.max_order.size(); ++i) os << (i ? "," : "") << d.max_order[i];
  os << "), shift <= (";
  for (std::size_t i = 0; i < d.max_shift.size(); ++i) os << (i ? "," : "") << d.max_shift[i];
  os << ")";
  return os.str();
}

const DiffReport* find_scan(const std::vector<DiffReport>& scans, Property p, std::size_t dims) {
  for (const auto& s : scans)
    if (s.property == p && s.max_order.size() == dims) return &s;
  return nullptr;
}

// Shared tail of the verdict rules: necessary conditions, then the oracle.
PropertyVerdict verdict_from_necessary_and_oracle(Property p, const std::vector<ConditionReport>& criteria,
                                                  const DiffReport* scan) {
  PropertyVerdict v;
  v.property = p;
  if (scan && scan->violated()) v.witness = scan->witness;
  for (const auto& c : criteria) {
    if (property_of(c.criterion) == p && strength_of(c.criterion) == Strength::Necessary &&
        c.status == Status::Fails) {
      v.kind = VerdictKind::ProvedNot;
      v.rule = std::string("necessary condition ") + std::string(to_string(c.criterion)) + " fails";
      return v;
    }
  }
  if (!scan) {
    v.kind = VerdictKind::Unknown;
    v.rule = "no applicable criterion and no oracle scan";
    return v;
  }
  if (scan->violated()) {
    // A single exact wrong-signed difference is a genuine counterexample.
    v.kind = VerdictKind::ProvedNot;
    v.rule = "exact oracle counterexample";
  } else {
    v.kind = VerdictKind::EmpiricallySupported;
    v.rule = "no exact violation with " + budget_text(*scan);
  }
  return v;
}

PropertyVerdict iff_or_sufficient(Property p, const std::vector<ConditionReport>& criteria, const DiffReport* scan,
                                  bool& decided) {
  PropertyVerdict v;
  v.property = p;
  if (scan && scan->violated()) v.witness = scan->witness;
  decided = true;
  for (const auto& c : criteria) {
    if (property_of(c.criterion) != p || strength_of(c.criterion) != Strength::Iff) continue;
    if (c.status == Status::NotApplicable) continue;
    v.kind = c.status == Status::Holds ? VerdictKind::Proved : VerdictKind::ProvedNot;
    v.rule = std::string(to_string(c.criterion)) + " (iff) " + (c.status == Status::Holds ? "holds" : "fails");
    return v;
  }
  for (const auto& c : criteria) {
    if (property_of(c.criterion) == p && strength_of(c.criterion) == Strength::Sufficient &&
        c.status == Status::Holds) {
      v.kind = VerdictKind::Proved;
      v.rule = std::string(to_string(c.criterion)) + " (sufficient) holds";
      return v;
    }
  }
  decided = false;
  return v;
}

PropertyVerdict ratio_verdict(Property p, const Report& rep) {
  const DiffReport* scan = find_scan(rep.oracle, p, 1);
  bool decided = false;
  auto v = iff_or_sufficient(p, rep.criteria, scan, decided);
  if (decided) return v;

  if (rep.weight && rep.sign) {
    const auto& wx = *rep.weight;
    const auto& s = *rep.sign;
    auto set = [&](VerdictKind k, std::string rule) {
      v.kind = k;
      v.rule = std::move(rule);
      return v;
    };
    if (p == Property::CM) {
      if (!wx.linear_coeff.is_zero()) return set(VerdictKind::ProvedNot, "affine part: a1 = " + wx.linear_coeff.to_string() + " != 0");
      if (wx.atom_at_one.sign() < 0) return set(VerdictKind::ProvedNot, "affine part: atom a0 = " + wx.atom_at_one.to_string() + " < 0");
      if (s.proved_nonnegative()) return set(VerdictKind::Proved, "a1 = 0, a0 >= 0 and w >= 0 via " + std::string(to_string(s.proof_route)));
      if (s.status == SignStatus::NonPositiveProved)
        return set(VerdictKind::ProvedNot, "w <= 0 and not identically zero via " + std::string(to_string(s.proof_route)));
    } else {
      if (wx.linear_coeff.sign() < 0) return set(VerdictKind::ProvedNot, "affine part: a1 = " + wx.linear_coeff.to_string() + " < 0");
      if (s.proved_nonpositive()) return set(VerdictKind::Proved, "a1 >= 0 and w <= 0 via " + std::string(to_string(s.proof_route)));
      if (s.status == SignStatus::NonNegativeProved)
        return set(VerdictKind::ProvedNot, "w >= 0 and not identically zero via " + std::string(to_string(s.proof_route)));
    }
  }
  return verdict_from_necessary_and_oracle(p, rep.criteria, scan);
}

void check_consistency(const Report& rep) {
  for (const auto& v : rep.verdicts) {
    if (v.kind != VerdictKind::Proved) continue;
    for (const auto& scan : rep.oracle)
      if (scan.property == v.property && scan.violated() && !scan.float_mode)
        throw InconsistencyError(std::string(to_string(v.property)) + " proved by '" + v.rule +
                                 "' but the exact oracle found a violation");
  }
}

void run_ratio(const AnalysisRequest& req, const RatioTarget& target, Report& rep) {
  const RationalSeq r = build_sequence(target);
  rep.partial_fractions = partial_fractions(r);
  if (req.stage == Stage::Decompose) return;

  if (req.stage == Stage::Conditions || req.stage == Stage::Classify) rep.criteria = ratio_criteria(r, rep.warnings);
  if (req.stage == Stage::Conditions) return;

  rep.weight = weight_from_partial_fractions(*rep.partial_fractions);
  rep.sign = sign_analyze(*rep.weight, req.grid_size, req.tol_rel);
  if (req.dump_weight_path) {
    std::ofstream out(*req.dump_weight_path, std::ios::binary);
    if (!out) throw InputError("cannot open weight dump path '" + *req.dump_weight_path + "'");
    const auto samples = weight_samples(*rep.weight, req.grid_size);
    write_weight_csv(out, samples);
  }
  if (req.stage == Stage::Weight) return;

  const SeqFn phi = [&r](std::uint64_t n) { return r(n); };
  for (Property p : req.properties) rep.oracle.push_back(scan_1d(phi, p, req.budget1d));

  if (!req.exp_check_t.empty()) {
    const FloatSeqFn psi = [&r](std::uint64_t n) { return r.eval(static_cast<double>(n)); };
    rep.exp_check = ca_exp_spotcheck(psi, req.exp_check_t, req.budget1d);
    for (const auto& w : rep.exp_check->warnings) rep.warnings.push_back(w);
  }

  for (Property p : req.properties) rep.verdicts.push_back(ratio_verdict(p, rep));
}

void run_net(const AnalysisRequest& req, const NetTarget& target, Report& rep) {
  auto param = [&](std::size_t n) {
    if (target.params.size() != n)
      throw InputError(std::string(to_string(target.kind)) + " needs " + std::to_string(n) + " parameters");
  };
  std::optional<Net2D> net;
  switch (target.kind) {
    case NetKind::CAJCM: {
      if (!target.psi) throw InputError("CAJCM net needs psi");
      RationalSeq psi = build_sequence(*target.psi);
      if (!target.shift.is_zero()) psi = psi.plus_constant(target.shift);
      rep.partial_fractions = partial_fractions(psi);
      if (req.stage == Stage::Decompose) return;
      const auto d2 = degree2_iff(psi);
      for (Criterion c : {Criterion::CARoot1, Criterion::CARoot2, Criterion::CARoot2b})
        rep.criteria.push_back(d2.status != Status::NotApplicable && d2.criterion == c
                                   ? d2
                                   : na(c, "psi shape does not match this case"));
      if (req.stage == Stage::Conditions) return;
      rep.weight = weight_from_partial_fractions(*rep.partial_fractions);
      rep.sign = sign_analyze(*rep.weight, req.grid_size, req.tol_rel);
      if (req.stage == Stage::Weight) return;
      rep.cajcm = cajcm_classify(psi, target.alpha, req.budget1d, req.budget2d);
      if (const auto* scan = std::get_if<DiffReport>(&rep.cajcm->ca_verdict)) rep.oracle.push_back(*scan);
      rep.oracle.push_back(rep.cajcm->cm2d_verdict);
      if (rep.cajcm->warning) rep.warnings.push_back(*rep.cajcm->warning);
      break;
    }
    case NetKind::BiPoly:
    case NetKind::BiPolyWeighted:
      param(4);
      net = Net2D::bipoly(target.params[0], target.params[1], target.params[2], target.params[3],
                          target.kind == NetKind::BiPolyWeighted);
      rep.criteria.push_back(bipoly_iff(target.params[0], target.params[1], target.params[2], target.params[3]));
      break;
    case NetKind::BiCompI:
      param(2);
      net = Net2D::bicomp_i(target.params[0], target.params[1]);
      rep.criteria.push_back(bicomp_iff(BiCompKind::I, target.params));
      break;
    case NetKind::BiCompII:
      param(3);
      net = Net2D::bicomp_ii(target.params[0], target.params[1], target.params[2]);
      rep.criteria.push_back(bicomp_iff(BiCompKind::II, target.params));
      break;
    case NetKind::BiCompIII:
      param(4);
      net = Net2D::bicomp_iii(target.params[0], target.params[1], target.params[2], target.params[3]);
      rep.criteria.push_back(bicomp_iff(BiCompKind::III, target.params));
      break;
  }
  if (net) {
    if (req.stage == Stage::Conditions || req.stage == Stage::Decompose || req.stage == Stage::Weight) return;
    rep.oracle.push_back(scan_2d(net->evaluator(), Property::CM, req.budget2d));
  }

  for (Property p : req.properties) {
    PropertyVerdict v;
    v.property = p;
    if (p == Property::CA) {
      v.kind = VerdictKind::Unknown;
      v.rule = "nets are classified for 2-D complete monotonicity only";
      rep.verdicts.push_back(std::move(v));
      continue;
    }
    const DiffReport* scan = find_scan(rep.oracle, Property::CM, 2);
    if (rep.cajcm) {
      if (scan && scan->violated()) v.witness = scan->witness;
      if (!v.witness) v.witness = rep.cajcm->targeted_witness;
      if (const auto* iff = std::get_if<ConditionReport>(&rep.cajcm->ca_verdict)) {
        v.kind = iff->status == Status::Holds ? VerdictKind::Proved : VerdictKind::ProvedNot;
        v.rule = std::string("psi CA status by ") + std::string(to_string(iff->criterion)) +
                 " (iff), transferred by 1/(psi + alpha n) equivalence";
      } else if (rep.sign && rep.weight && rep.weight->linear_coeff.sign() >= 0 && rep.sign->proved_nonpositive()) {
        v.kind = VerdictKind::Proved;
        v.rule = "psi CA by proved density sign, transferred by 1/(psi + alpha n) equivalence";
      } else {
        v = verdict_from_necessary_and_oracle(p, {}, scan);
      }
    } else {
      bool decided = false;
      v = iff_or_sufficient(p, rep.criteria, scan, decided);
      if (!decided) v = verdict_from_necessary_and_oracle(p, rep.criteria, scan);
    }
    rep.verdicts.push_back(std::move(v));
  }
}

}  // namespace

Report classify_command(const AnalysisRequest& request) {
  validate_budgets(request);
  Report rep;
  rep.request = request;
  if (const auto* ratio = std::get_if<RatioTarget>(&request.target))
    run_ratio(request, *ratio, rep);
  else
    run_net(request, std::get<NetTarget>(request.target), rep);
  check_consistency(rep);
  return rep;
}

}  // namespace cmseq
