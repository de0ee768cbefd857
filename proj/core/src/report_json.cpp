#include <cmath>
#include <sstream>

#include "cmseq/classify.hpp"
#include "json.hpp"

namespace cmseq {

namespace {

using nlohmann::json;

json rat(const Rational& r) { return r.to_fraction_string(); }

json rats(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(rat(r));
  return out;
}

// Non-finite doubles have no JSON spelling; they are emitted as strings.
json num(double d) {
  if (std::isfinite(d)) return d;
  if (std::isnan(d)) return "nan";
  return d > 0 ? "inf" : "-inf";
}

std::string_view stage_name(Stage s) {
  switch (s) {
    case Stage::Decompose: return "decompose";
    case Stage::Weight: return "weight";
    case Stage::Conditions: return "conditions";
    case Stage::Classify: return "classify";
  }
  return "?";
}

json ratio_json(const RatioTarget& t) {
  json j;
  j["numerator"] = t.numerator_text;
  j["denominator"] = t.denominator_text;
  j["zero_shifts"] = t.zero_shifts ? rats(*t.zero_shifts) : json(nullptr);
  j["numerator_coefficients"] = t.numerator_coeffs ? rats(*t.numerator_coeffs) : json(nullptr);
  j["pole_shifts"] = rats(t.pole_shifts);
  return j;
}

json request_json(const AnalysisRequest& req) {
  json j;
  if (const auto* r = std::get_if<RatioTarget>(&req.target)) {
    j["target"] = {{"type", "ratio"}, {"ratio", ratio_json(*r)}};
  } else {
    const auto& n = std::get<NetTarget>(req.target);
    json net;
    net["kind"] = to_string(n.kind);
    net["params"] = rats(n.params);
    net["psi"] = n.psi ? ratio_json(*n.psi) : json(nullptr);
    net["alpha"] = rat(n.alpha);
    net["shift"] = rat(n.shift);
    j["target"] = {{"type", "net2d"}, {"net2d", net}};
  }
  json props = json::array();
  for (auto p : req.properties) props.push_back(to_string(p));
  j["properties"] = props;
  j["budget_1d"] = {{"max_order", req.budget1d.max_order}, {"max_shift", req.budget1d.max_shift}};
  j["budget_2d"] = {{"max_order_m", req.budget2d.max_order_m},
                    {"max_order_n", req.budget2d.max_order_n},
                    {"max_shift_m", req.budget2d.max_shift_m},
                    {"max_shift_n", req.budget2d.max_shift_n}};
  j["grid_size"] = req.grid_size;
  j["tol_rel"] = num(req.tol_rel);
  j["dump_weight"] = req.dump_weight_path ? json(*req.dump_weight_path) : json(nullptr);
  json ts = json::array();
  for (double t : req.exp_check_t) ts.push_back(num(t));
  j["exp_check_t"] = ts;
  j["stage"] = stage_name(req.stage);
  return j;
}

json pf_json(const PartialFractions& pf) {
  json terms = json::array();
  for (const auto& t : pf.terms)
    terms.push_back({{"pole", rat(t.pole)}, {"order", t.order}, {"coefficient", rat(t.coefficient)}});
  return {{"a0", rat(pf.a0)}, {"a1", rat(pf.a1)}, {"terms", terms}};
}

json condition_json(const ConditionReport& c) {
  json detail = json::array();
  for (const auto& d : c.detail)
    detail.push_back({{"label", d.label},
                      {"lhs", rat(d.lhs)},
                      {"relation", d.relation == Relation::Less ? "<" : "<="},
                      {"rhs", rat(d.rhs)},
                      {"holds", d.holds}});
  json j;
  j["criterion"] = to_string(c.criterion);
  j["status"] = to_string(c.status);
  j["strength"] = strength_of(c.criterion) == Strength::Iff
                      ? "iff"
                      : (strength_of(c.criterion) == Strength::Sufficient ? "sufficient" : "necessary");
  j["property"] = to_string(property_of(c.criterion));
  j["detail"] = detail;
  j["certificate"] = c.certificate ? json(*c.certificate) : json(nullptr);
  j["notes"] = c.notes;
  return j;
}

json witness_json(const std::optional<DiffWitness>& w) {
  if (!w) return nullptr;
  return {{"orders", w->orders}, {"shifts", w->shifts}, {"value", rat(w->value)}};
}

json diff_json(const DiffReport& d) {
  return {{"property", to_string(d.property)},
          {"max_order", d.max_order},
          {"max_shift", d.max_shift},
          {"verdict", d.violated() ? "Violation" : "NoViolationFound"},
          {"witness", witness_json(d.witness)},
          {"float_mode", d.float_mode}};
}

json sample_json(const SignSample& s) {
  return {{"t", num(s.t)}, {"u", num(s.u)}, {"w", num(s.w)}, {"relative", num(s.relative)}};
}

json weight_json(const Report& rep) {
  if (!rep.weight) return nullptr;
  const auto& wx = *rep.weight;
  json terms = json::array();
  for (const auto& t : wx.terms)
    terms.push_back({{"coefficient", rat(t.coefficient)}, {"exponent", rat(t.exponent)}, {"log_power", t.log_power}});
  json j;
  j["atom_at_one"] = rat(wx.atom_at_one);
  j["linear_coeff"] = rat(wx.linear_coeff);
  j["terms"] = terms;
  if (rep.sign) {
    const auto& s = *rep.sign;
    json ws = json::array();
    for (const auto& w : s.witnesses) ws.push_back(sample_json(w));
    json changes = json::array();
    for (double t : s.sign_changes) changes.push_back(num(t));
    j["sign"] = {{"status", to_string(s.status)},
                 {"proof_route", to_string(s.proof_route)},
                 {"witnesses", ws},
                 {"min_sampled", num(s.min_sampled)},
                 {"max_sampled", num(s.max_sampled)},
                 {"min_relative", num(s.min_relative)},
                 {"max_relative", num(s.max_relative)},
                 {"sample_count", s.sample_count},
                 {"sign_near_zero", s.sign_near_zero},
                 {"sign_near_one", s.sign_near_one},
                 {"coefficient_sign_changes", s.coefficient_sign_changes},
                 {"sign_changes", changes},
                 {"identically_zero", s.identically_zero}};
  } else {
    j["sign"] = nullptr;
  }
  return j;
}

json oracle_json(const Report& rep) {
  const bool empty = rep.oracle.empty() && !rep.exp_check && !rep.cajcm && rep.warnings.empty();
  if (empty && rep.request.stage != Stage::Classify) return nullptr;
  json scans = json::array();
  for (const auto& d : rep.oracle) scans.push_back(diff_json(d));
  json j;
  j["scans"] = scans;
  j["warnings"] = rep.warnings;
  if (rep.exp_check) {
    const auto& e = *rep.exp_check;
    json ts = json::array();
    for (double t : e.t_values) ts.push_back(num(t));
    json es = json::array();
    for (const auto& d : e.scans) es.push_back(diff_json(d));
    j["exp_check"] = {{"passed", e.passed}, {"t_values", ts}, {"scans", es}, {"warnings", e.warnings}};
  } else {
    j["exp_check"] = nullptr;
  }
  if (rep.cajcm) {
    const auto& c = *rep.cajcm;
    json ca;
    if (const auto* cr = std::get_if<ConditionReport>(&c.ca_verdict))
      ca = {{"kind", "criterion"}, {"report", condition_json(*cr)}};
    else
      ca = {{"kind", "oracle"}, {"report", diff_json(std::get<DiffReport>(c.ca_verdict))}};
    j["cajcm"] = {{"ca_verdict", ca},
                  {"cm2d_verdict", diff_json(c.cm2d_verdict)},
                  {"targeted_witness", witness_json(c.targeted_witness)},
                  {"psi_is_ca", c.psi_is_ca},
                  {"net_is_cm", c.net_is_cm},
                  {"consistent", c.consistent},
                  {"warning", c.warning ? json(*c.warning) : json(nullptr)}};
  } else {
    j["cajcm"] = nullptr;
  }
  return j;
}

std::string diff_text(const DiffReport& d) {
  std::ostringstream os;
  os << to_string(d.property) << " scan order<=(";
  for (std::size_t i = 0; i < d.max_order.size(); ++i) os << (i ? "," : "") << d.max_order[i];
  os << ") shift<=(";
  for (std::size_t i = 0; i < d.max_shift.size(); ++i) os << (i ? "," : "") << d.max_shift[i];
  os << "): " << (d.violated() ? "Violation" : "NoViolationFound");
  if (d.witness) {
    os << " at order (";
    for (std::size_t i = 0; i < d.witness->orders.size(); ++i) os << (i ? "," : "") << d.witness->orders[i];
    os << ") shift (";
    for (std::size_t i = 0; i < d.witness->shifts.size(); ++i) os << (i ? "," : "") << d.witness->shifts[i];
    os << ") value " << d.witness->value << " ~ " << d.witness->value.to_double();
  }
  if (d.float_mode) os << " [float]";
  return os.str();
}

}  // namespace

std::string report_to_json(const Report& report, int indent) {
  json j;
  j["request"] = request_json(report.request);
  j["partial_fractions"] = report.partial_fractions ? pf_json(*report.partial_fractions) : json(nullptr);
  if (report.criteria.empty()) {
    j["criteria"] = nullptr;
  } else {
    json cs = json::array();
    for (const auto& c : report.criteria) cs.push_back(condition_json(c));
    j["criteria"] = cs;
  }
  j["weight"] = weight_json(report);
  j["oracle"] = oracle_json(report);
  if (report.verdicts.empty()) {
    j["verdicts"] = nullptr;
  } else {
    json vs = json::array();
    for (const auto& v : report.verdicts)
      vs.push_back({{"property", to_string(v.property)},
                    {"verdict", to_string(v.kind)},
                    {"rule", v.rule},
                    {"witness", witness_json(v.witness)}});
    j["verdicts"] = vs;
  }
  return j.dump(indent) + "\n";
}

std::string report_to_text(const Report& report) {
  std::ostringstream os;
  if (report.partial_fractions) {
    const auto& pf = *report.partial_fractions;
    os << "partial fractions: a0 = " << pf.a0 << ", a1 = " << pf.a1 << "\n";
    for (const auto& t : pf.terms)
      os << "  " << t.coefficient << " / (x + " << t.pole << ")" << (t.order > 1 ? "^" + std::to_string(t.order) : "")
         << "\n";
  }
  if (!report.criteria.empty()) {
    os << "criteria:\n";
    for (const auto& c : report.criteria) {
      os << "  " << to_string(c.criterion) << ": " << to_string(c.status);
      if (c.certificate) {
        os << " sigma = (";
        for (std::size_t i = 0; i < c.certificate->size(); ++i) os << (i ? "," : "") << (*c.certificate)[i];
        os << ")";
      }
      os << "\n";
      for (const auto& d : c.detail)
        if (!d.holds || c.status != Status::Holds)
          os << "    " << d.label << ": " << d.lhs << (d.relation == Relation::Less ? " < " : " <= ") << d.rhs
             << (d.holds ? "" : "  [fails]") << "\n";
      for (const auto& n : c.notes) os << "    note: " << n << "\n";
    }
  }
  if (report.weight) {
    const auto& wx = *report.weight;
    os << "weight: atom at t=1: " << wx.atom_at_one << ", linear part: " << wx.linear_coeff << "\n";
    os << "  w(t) =";
    if (wx.terms.empty()) os << " 0";
    for (const auto& t : wx.terms) {
      os << " + (" << t.coefficient << ") t^(" << (t.exponent - Rational(1)) << ")";
      if (t.log_power) os << " (-ln t)^" << t.log_power;
    }
    os << "\n  w(e^-u) e^-u =";
    if (wx.terms.empty()) os << " 0";
    for (const auto& t : wx.terms) {
      os << " + (" << t.coefficient << ") e^(-" << t.exponent << " u)";
      if (t.log_power) os << " u^" << t.log_power;
    }
    os << "\n";
    if (report.sign) {
      const auto& s = *report.sign;
      os << "  sign: " << to_string(s.status) << " (route " << to_string(s.proof_route) << ", "
         << s.sample_count << " samples, relative range [" << s.min_relative << ", " << s.max_relative << "])\n";
      for (const auto& w : s.witnesses) os << "    w(" << w.t << ") = " << w.w << " (relative " << w.relative << ")\n";
    }
  }
  if (!report.oracle.empty()) {
    os << "oracle:\n";
    for (const auto& d : report.oracle) os << "  " << diff_text(d) << "\n";
  }
  if (report.exp_check) {
    os << "exp check: " << (report.exp_check->passed ? "passed" : "failed") << "\n";
    for (const auto& d : report.exp_check->scans) os << "  " << diff_text(d) << "\n";
  }
  if (report.cajcm) {
    const auto& c = *report.cajcm;
    os << "cajcm: psi CA = " << (c.psi_is_ca ? "true" : "false") << ", net CM = " << (c.net_is_cm ? "true" : "false")
       << ", consistent = " << (c.consistent ? "true" : "false") << "\n";
    if (c.targeted_witness) {
      const auto& w = *c.targeted_witness;
      os << "  targeted 2-D violation at order (" << w.orders[0] << "," << w.orders[1] << ") shift (" << w.shifts[0]
         << "," << w.shifts[1] << ") value " << w.value << "\n";
    }
  }
  for (const auto& w : report.warnings) os << "warning: " << w << "\n";
  for (const auto& v : report.verdicts) {
    os << "verdict " << to_string(v.property) << ": " << to_string(v.kind) << " (" << v.rule << ")";
    if (v.witness) os << " witness value " << v.witness->value;
    os << "\n";
  }
  return os.str();
}

}  // namespace cmseq
