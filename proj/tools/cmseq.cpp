// cmseq: complete monotonicity / complete alternation of rational sequences.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cmseq/classify.hpp"
#include "cmseq/errors.hpp"
#include "cmseq/parse.hpp"

namespace {

using namespace cmseq;

struct RatioOptions {
  std::string num;
  std::string num_coeffs;
  std::string den;
};

struct CommonOptions {
  std::string property = "both";
  std::uint64_t max_order = Budget1D{}.max_order;
  std::uint64_t max_shift = Budget1D{}.max_shift;
  Budget2D budget2d;
  std::size_t grid = kDefaultGridSize;
  double tol = kDefaultSignTolerance;
  bool json = false;
  std::string dump_weight;
  std::string exp_check;
  std::string output;
};

void add_ratio_options(CLI::App* cmd, RatioOptions& r, const std::string& prefix = "") {
  cmd->add_option("--" + prefix + "num", r.num, "numerator as factors, e.g. \"(x+1.5)(x+2)\"");
  cmd->add_option("--" + prefix + "num-coeffs", r.num_coeffs, "numerator coefficients, ascending degree, e.g. \"1,0,2\"");
  cmd->add_option("--" + prefix + "den", r.den, "denominator factors (x+b) with b > 0")->required();
}

void add_common_options(CLI::App* cmd, CommonOptions& o, bool oracle) {
  cmd->add_option("--grid", o.grid, "weight sampling grid size")->capture_default_str();
  cmd->add_option("--tol", o.tol, "relative tolerance of the weight sign test")->capture_default_str();
  cmd->add_flag("--json", o.json, "emit a JSON report");
  cmd->add_option("-o,--output", o.output, "write the report to a file instead of stdout");
  if (!oracle) return;
  cmd->add_option("--property", o.property, "cm, ca or both")
      ->check(CLI::IsMember({"cm", "ca", "both"}, CLI::ignore_case))
      ->capture_default_str();
  cmd->add_option("--max-order", o.max_order, "1-D oracle order budget N")->capture_default_str();
  cmd->add_option("--max-shift", o.max_shift, "1-D oracle shift budget M")->capture_default_str();
  cmd->add_option("--max-order-m", o.budget2d.max_order_m, "2-D order budget N1")->capture_default_str();
  cmd->add_option("--max-order-n", o.budget2d.max_order_n, "2-D order budget N2")->capture_default_str();
  cmd->add_option("--max-shift-m", o.budget2d.max_shift_m, "2-D shift budget M1")->capture_default_str();
  cmd->add_option("--max-shift-n", o.budget2d.max_shift_n, "2-D shift budget M2")->capture_default_str();
}

RatioTarget make_ratio(const RatioOptions& r) {
  RatioTarget t;
  if (!r.num.empty() && !r.num_coeffs.empty()) throw InputError("use either --num or --num-coeffs, not both");
  if (r.num.empty() && r.num_coeffs.empty()) throw InputError("a numerator is required (--num or --num-coeffs)");
  if (!r.num.empty()) {
    t.zero_shifts = parse_factored_poly(r.num);
    t.numerator_text = r.num;
  } else {
    t.numerator_coeffs = parse_rational_list(r.num_coeffs);
    t.numerator_text = r.num_coeffs;
  }
  t.pole_shifts = parse_factored_poly(r.den);
  t.denominator_text = r.den;
  return t;
}

void apply_common(AnalysisRequest& req, const CommonOptions& o) {
  if (o.property == "cm" || o.property == "CM")
    req.properties = {Property::CM};
  else if (o.property == "ca" || o.property == "CA")
    req.properties = {Property::CA};
  else
    req.properties = {Property::CM, Property::CA};
  req.budget1d = {o.max_order, o.max_shift};
  req.budget2d = o.budget2d;
  req.grid_size = o.grid;
  req.tol_rel = o.tol;
  if (!o.dump_weight.empty()) req.dump_weight_path = o.dump_weight;
  if (!o.exp_check.empty())
    for (const auto& t : parse_rational_list(o.exp_check)) req.exp_check_t.push_back(t.to_double());
}

NetKind parse_kind(const std::string& s) {
  if (s == "cajcm") return NetKind::CAJCM;
  if (s == "bipoly") return NetKind::BiPoly;
  if (s == "bipoly-weighted") return NetKind::BiPolyWeighted;
  if (s == "bicomp-i") return NetKind::BiCompI;
  if (s == "bicomp-ii") return NetKind::BiCompII;
  if (s == "bicomp-iii") return NetKind::BiCompIII;
  throw InputError("unknown net kind '" + s + "'");
}

void emit(const Report& rep, const CommonOptions& o) {
  const std::string text = o.json ? report_to_json(rep) : report_to_text(rep);
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output, std::ios::binary);
  if (!out) throw InputError("cannot open output file '" + o.output + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact complete monotonicity and complete alternation analysis of rational sequences.\n"
               "Shift convention: r(x) = prod (x + a_i) / prod (x + b_i); zeros and poles sit at -a_i, -b_i."};
  app.require_subcommand(1);

  RatioOptions ratio;
  CommonOptions common;

  struct Sub {
    CLI::App* cmd;
    Stage stage;
  };
  std::vector<Sub> ratio_subs = {
      {app.add_subcommand("classify", "full analysis and verdict per property"), Stage::Classify},
      {app.add_subcommand("decompose", "exact partial fraction decomposition"), Stage::Decompose},
      {app.add_subcommand("weight", "representing density and its sign analysis"), Stage::Weight},
      {app.add_subcommand("conditions", "closed-form criteria only"), Stage::Conditions},
  };
  for (auto& s : ratio_subs) {
    add_ratio_options(s.cmd, ratio);
    add_common_options(s.cmd, common, s.stage == Stage::Classify);
    if (s.stage == Stage::Classify || s.stage == Stage::Weight)
      s.cmd->add_option("--dump-weight", common.dump_weight, "write sampled w(t) as CSV");
    if (s.stage == Stage::Classify)
      s.cmd->add_option("--exp-check", common.exp_check, "t values for the exp(-t r) CM spot check, e.g. \"0.5,1,2\"");
  }

  std::string kind;
  std::string params;
  std::string alpha = "1";
  std::string shift = "0";
  RatioOptions psi;
  auto* net_cmd = app.add_subcommand("net2d", "two-variable nets on Z+^2");
  net_cmd->add_option("--kind", kind, "cajcm, bipoly, bipoly-weighted, bicomp-i, bicomp-ii, bicomp-iii")->required();
  net_cmd->add_option("--params", params, "family parameters, e.g. \"1,2,0,3\"");
  net_cmd->add_option("--psi-num", psi.num, "cajcm: numerator of psi as factors");
  net_cmd->add_option("--psi-num-coeffs", psi.num_coeffs, "cajcm: numerator coefficients of psi");
  net_cmd->add_option("--psi-den", psi.den, "cajcm: denominator of psi as factors");
  net_cmd->add_option("--alpha", alpha, "cajcm: positive scale of n")->capture_default_str();
  net_cmd->add_option("--shift", shift, "cajcm: constant added to psi")->capture_default_str();
  add_common_options(net_cmd, common, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    AnalysisRequest req;
    apply_common(req, common);
    if (net_cmd->parsed()) {
      NetTarget t;
      t.kind = parse_kind(kind);
      if (!params.empty()) t.params = parse_rational_list(params);
      if (t.kind == NetKind::CAJCM) {
        if (psi.den.empty()) throw InputError("cajcm needs --psi-den");
        t.psi = make_ratio(psi);
      }
      t.alpha = rat_from_string(alpha);
      t.shift = rat_from_string(shift);
      req.target = t;
    } else {
      for (const auto& s : ratio_subs)
        if (s.cmd->parsed()) req.stage = s.stage;
      req.target = make_ratio(ratio);
    }
    emit(classify_command(req), common);
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 2;
  } catch (const InconsistencyError& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
