#include <filesystem>
#include <fstream>
#include <set>

#include "cmseq/classify.hpp"
#include "cmseq/errors.hpp"
#include "cmseq/parse.hpp"
#include "doctest.h"
#include "json.hpp"
#include "random.hpp"

using namespace cmseq;

namespace {

AnalysisRequest ratio_request(std::string_view num, std::string_view den, std::vector<Property> props) {
  RatioTarget t;
  t.zero_shifts = parse_factored_poly(num);
  t.pole_shifts = parse_factored_poly(den);
  t.numerator_text = num;
  t.denominator_text = den;
  AnalysisRequest req;
  req.target = t;
  req.properties = std::move(props);
  return req;
}

const ConditionReport& find(const Report& rep, Criterion c) {
  for (const auto& r : rep.criteria)
    if (r.criterion == c) return r;
  FAIL("criterion missing");
  throw 0;
}

}  // namespace

TEST_CASE("CM without the Ball conditions") {
  const auto rep = classify_command(ratio_request("(x+1.5)(x+2)(x+4)", "(x+1)(x+3)(x+3.5)", {Property::CM}));
  REQUIRE(rep.verdicts.size() == 1);
  CHECK(rep.verdicts[0].kind == VerdictKind::EmpiricallySupported);
  CHECK(rep.verdicts[0].rule.find("order <= (12)") != std::string::npos);
  CHECK(find(rep, Criterion::Ball).status == Status::Fails);
  CHECK(rep.sign->status == SignStatus::NonNegativeSampled);
}

TEST_CASE("(x+6)/(x+5) is not CA") {
  const auto rep = classify_command(ratio_request("(x+6)", "(x+5)", {Property::CA}));
  REQUIRE(rep.verdicts.size() == 1);
  const auto& v = rep.verdicts[0];
  CHECK(v.kind == VerdictKind::ProvedNot);
  CHECK(v.rule.find("CARoot1") != std::string::npos);
  REQUIRE(v.witness);
  CHECK(v.witness->orders == std::vector<std::uint64_t>{1});
  CHECK(v.witness->shifts == std::vector<std::uint64_t>{0});
  CHECK(v.witness->value == Rational(1, 30));
}

TEST_CASE("necessary conditions hold but CM fails") {
  const auto rep = classify_command(ratio_request("(x+6)(x+8)(x+14)", "(x+5)(x+10)(x+13)", {Property::CM}));
  const auto& v = rep.verdicts.at(0);
  CHECK(v.kind == VerdictKind::ProvedNot);
  REQUIRE(v.witness);
  CHECK(v.witness->orders[0] == 1);
  const auto& perm = find(rep, Criterion::Main1PermCM);
  CHECK(perm.status == Status::Holds);
  CHECK(*perm.certificate == std::vector<std::size_t>{1, 3, 2});
}

TEST_CASE("verdict rules") {
  // Sufficient partial sums give a proof of CA.
  auto rep = classify_command(ratio_request("(x+1)(x+3)", "(x+2)(x+4)", {Property::CA}));
  CHECK(rep.verdicts[0].kind == VerdictKind::Proved);
  // BiCase iff.
  rep = classify_command(ratio_request("(x+2)(x+3)", "(x+1)(x+2)", {Property::CM}));
  CHECK(rep.verdicts[0].kind == VerdictKind::Proved);
  CHECK(rep.verdicts[0].rule.find("BiCase") != std::string::npos);
  // A linear part rules out CM.
  rep = classify_command(ratio_request("(x+1)(x+2)(x+3)", "(x+4)(x+5)", {Property::CM, Property::CA}));
  CHECK(rep.verdicts[0].kind == VerdictKind::ProvedNot);
  CHECK(rep.verdicts[0].rule.find("a1") != std::string::npos);
  // Negative leading coefficient rules out CA.
  RatioTarget t;
  t.numerator_coeffs = std::vector<Rational>{1, 0, -1};
  t.pole_shifts = {1};
  AnalysisRequest req;
  req.target = t;
  req.properties = {Property::CA};
  rep = classify_command(req);
  CHECK(rep.verdicts[0].kind == VerdictKind::ProvedNot);
}

TEST_CASE("every criterion is listed once") {
  testing::Rng rng(61);
  for (int i = 0; i < 40; ++i) {
    const std::size_t k = static_cast<std::size_t>(rng.integer(1, 4));
    RatioTarget t;
    std::vector<Rational> a;
    for (std::size_t j = 0; j < k + static_cast<std::size_t>(rng.integer(-1, 1)); ++j) a.push_back(rng.rational(-3, 8));
    t.zero_shifts = a;
    t.pole_shifts = rng.positives(k, 8);
    AnalysisRequest req;
    req.target = t;
    req.stage = Stage::Conditions;
    const auto rep = classify_command(req);
    std::set<Criterion> seen;
    for (const auto& c : rep.criteria) CHECK(seen.insert(c.criterion).second);
    CHECK(seen.size() == 13);
  }
}

TEST_CASE("exact oracle never contradicts a proof") {
  testing::Rng rng(62);
  for (int i = 0; i < 150; ++i) {
    const std::size_t k = static_cast<std::size_t>(rng.integer(1, 4));
    RatioTarget t;
    t.zero_shifts = rng.positives(k + static_cast<std::size_t>(rng.integer(0, 1)) - (rng.coin() ? 0 : 1), 8);
    t.pole_shifts = rng.positives(k, 8);
    AnalysisRequest req;
    req.target = t;
    req.grid_size = 512;
    req.budget1d = {8, 20};
    CHECK_NOTHROW(classify_command(req));
  }
}

TEST_CASE("budgets and input errors") {
  auto req = ratio_request("(x+1)", "(x+2)", {Property::CM});
  req.budget1d.max_order = 0;
  CHECK_THROWS_AS(classify_command(req), BudgetError);
  req.budget1d = {65, 10};
  CHECK_THROWS_AS(classify_command(req), BudgetError);
  req.budget1d = {10, 2001};
  CHECK_THROWS_AS(classify_command(req), BudgetError);
  req.budget1d = {};
  req.grid_size = 10;
  CHECK_THROWS_AS(classify_command(req), BudgetError);
  CHECK_THROWS_AS(classify_command(ratio_request("(x+1)", "(x-2)", {Property::CM})), InputError);
  CHECK_THROWS_AS(classify_command(ratio_request("(x+1)(x+2)(x+3)", "(x+2)", {Property::CM})), InputError);
}

TEST_CASE("large k skips the permutation search with a warning") {
  std::string num, den;
  for (int i = 1; i <= 11; ++i) {
    num += "(x+" + std::to_string(2 * i) + ")";
    den += "(x+" + std::to_string(2 * i - 1) + ")";
  }
  auto req = ratio_request(num, den, {Property::CM});
  req.stage = Stage::Conditions;
  const auto rep = classify_command(req);
  CHECK(find(rep, Criterion::Main1PermCM).status == Status::NotApplicable);
  CHECK_FALSE(rep.warnings.empty());
}

TEST_CASE("stages") {
  auto req = ratio_request("(x+6)", "(x+5)", {Property::CA});
  req.stage = Stage::Decompose;
  auto rep = classify_command(req);
  CHECK(rep.partial_fractions);
  CHECK(rep.criteria.empty());
  CHECK_FALSE(rep.weight);
  req.stage = Stage::Weight;
  rep = classify_command(req);
  CHECK(rep.sign);
  CHECK(rep.verdicts.empty());
}

TEST_CASE("weight dump") {
  const auto path = std::filesystem::temp_directory_path() / "cmseq_weight_dump_test.csv";
  auto req = ratio_request("(x+6)", "(x+5)", {Property::CA});
  req.stage = Stage::Weight;
  req.grid_size = 64;
  req.dump_weight_path = path.string();
  classify_command(req);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,w");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 128);
  std::filesystem::remove(path);
}

TEST_CASE("nets") {
  AnalysisRequest req;
  req.properties = {Property::CM};
  NetTarget t;
  t.kind = NetKind::BiPoly;
  t.params = {1, 1, 1, 2};
  req.target = t;
  auto rep = classify_command(req);
  CHECK(rep.verdicts[0].kind == VerdictKind::ProvedNot);
  CHECK(rep.verdicts[0].witness);

  t.kind = NetKind::CAJCM;
  t.params.clear();
  RatioTarget psi;
  psi.zero_shifts = std::vector<Rational>{1};
  psi.pole_shifts = {2};
  t.psi = psi;
  req.target = t;
  rep = classify_command(req);
  CHECK(rep.verdicts[0].kind == VerdictKind::Proved);
  REQUIRE(rep.cajcm);
  CHECK(rep.cajcm->consistent);

  // A shift makes psi(m) = (m-1)/(m+1) + 2 strictly positive.
  psi.zero_shifts = std::vector<Rational>{-1};
  psi.pole_shifts = {1};
  t.psi = psi;
  req.target = t;
  CHECK_THROWS_AS(classify_command(req), InputError);
  t.shift = 2;
  req.target = t;
  CHECK_NOTHROW(classify_command(req));
}

TEST_CASE("json is canonical and round-trips") {
  for (auto* args : {"(x+6)|(x+5)", "(x+1.5)(x+2)(x+4)|(x+1)(x+3)(x+3.5)", "(x+1)(x+4)|(x+2)(x+2)"}) {
    const std::string s(args);
    const auto bar = s.find('|');
    auto req = ratio_request(s.substr(0, bar), s.substr(bar + 1), {Property::CM, Property::CA});
    req.grid_size = 256;
    req.exp_check_t = {0.5, 2.0};
    const auto rep = classify_command(req);
    const std::string text = report_to_json(rep);
    const auto j = nlohmann::json::parse(text);
    CHECK(j.dump(2) + "\n" == text);
    for (const char* key : {"request", "partial_fractions", "criteria", "weight", "oracle", "verdicts"})
      CHECK(j.contains(key));
    for (const auto& term : j["partial_fractions"]["terms"]) {
      const std::string c = term["coefficient"];
      CHECK(c.find('/') != std::string::npos);
      CHECK(parse_rational_list(c).size() == 1);
    }
    CHECK(j["partial_fractions"]["a0"] == "1/1");
  }
}

TEST_CASE("text report") {
  const auto rep = classify_command(ratio_request("(x+6)", "(x+5)", {Property::CA}));
  const auto text = report_to_text(rep);
  CHECK(text.find("verdict CA: ProvedNot") != std::string::npos);
  CHECK(text.find("1/30") != std::string::npos);
}
