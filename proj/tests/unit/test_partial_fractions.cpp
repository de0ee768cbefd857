#include "cmseq/errors.hpp"
#include "cmseq/partial_fractions.hpp"
#include "doctest.h"
#include "random.hpp"

using namespace cmseq;

namespace {

// c_i = p(-b_i) / prod_{j != i} (b_j - b_i) for simple poles.
std::vector<Rational> closed_form(const Poly& p, const std::vector<Rational>& b) {
  std::vector<Rational> c;
  for (std::size_t i = 0; i < b.size(); ++i) {
    Rational den = 1;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (j != i) den *= b[j] - b[i];
    c.push_back(p(-b[i]) / den);
  }
  return c;
}

std::vector<Rational> coefficients(const PartialFractions& pf) {
  std::vector<Rational> c;
  for (const auto& t : pf.terms) c.push_back(t.coefficient);
  return c;
}

}  // namespace

TEST_CASE("(x+3/2)(x+2)(x+4) over (x+1)(x+3)(x+7/2)") {
  const auto r = RationalSeq::factored({Rational(3, 2), 2, 4}, {1, 3, Rational(7, 2)});
  const auto pf = partial_fractions(r);
  CHECK(pf.a0 == 1);
  CHECK(pf.a1 == 0);
  REQUIRE(pf.terms.size() == 3);
  CHECK(pf.terms[0] == PoleTerm{1, 1, Rational(3, 10)});
  CHECK(pf.terms[1] == PoleTerm{3, 1, Rational(-3, 2)});
  CHECK(pf.terms[2] == PoleTerm{Rational(7, 2), 1, Rational(6, 5)});
}

TEST_CASE("(x+6)(x+8)(x+14) over (x+5)(x+10)(x+13)") {
  const auto r = RationalSeq::factored({6, 8, 14}, {5, 10, 13});
  const auto pf = partial_fractions(r);
  CHECK(coefficients(pf) == std::vector<Rational>{Rational(27, 40), Rational(-32, 15), Rational(35, 24)});
  const auto s = coefficient_sum_identity(r);
  CHECK(s.lhs == 0);
  CHECK(s.rhs == 0);
}

TEST_CASE("small cases") {
  const auto pf = partial_fractions(RationalSeq::factored({1, 3}, {2, 4}));
  CHECK(coefficients(pf) == std::vector<Rational>{Rational(-1, 2), Rational(-3, 2)});
  const auto lin = partial_fractions(RationalSeq::factored({1, 2}, {1}));
  CHECK(lin.a1 == 1);
  CHECK(lin.a0 == 2);
  CHECK(lin.terms[0].coefficient == 0);
  const auto dbl = partial_fractions(RationalSeq::factored({1, 4}, {2, 2}));
  // (x+1)(x+4)/(x+2)^2 = 1 + 1/(x+2) - 2/(x+2)^2
  REQUIRE(dbl.terms.size() == 2);
  CHECK(dbl.terms[0] == PoleTerm{2, 1, 1});
  CHECK(dbl.terms[1] == PoleTerm{2, 2, -2});
}

TEST_CASE("linear solve agrees with the closed form on simple poles") {
  testing::Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    const std::size_t k = static_cast<std::size_t>(rng.integer(1, 6));
    const auto b = rng.distinct_positives(k, 12);
    std::vector<Rational> pc;
    const auto deg = rng.integer(0, static_cast<std::int64_t>(k) + 1);
    for (std::int64_t j = 0; j <= deg; ++j) pc.push_back(rng.rational(-10, 10, 5));
    const Poly p(pc);
    const RationalSeq r(p, b);
    const auto pf = partial_fractions(r);
    CHECK(coefficients(pf) == closed_form(p, b));
    CHECK(reconstruct_check(pf, r, 20));
  }
}

TEST_CASE("reconstruction with repeated poles") {
  testing::Rng rng(22);
  for (int i = 0; i < 200; ++i) {
    auto b = rng.positives(static_cast<std::size_t>(rng.integer(1, 3)), 6, 2);
    b.push_back(b.front());
    if (rng.coin()) b.push_back(b.back());
    std::vector<Rational> a;
    for (std::size_t j = 0; j < b.size() + static_cast<std::size_t>(rng.integer(0, 1)); ++j)
      a.push_back(rng.rational(-6, 6, 3));
    const auto r = RationalSeq::factored(a, b);
    const auto pf = partial_fractions(r);
    CHECK(reconstruct_check(pf, r, 25));
    for (int x = -3; x < 3; ++x) {
      const Rational xq(2 * x + 1, 7);
      CHECK(pf(xq) == r.eval(xq));
    }
  }
}

TEST_CASE("coefficient sum identity") {
  testing::Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    const std::size_t k = static_cast<std::size_t>(rng.integer(1, 8));
    const auto r = RationalSeq::factored(rng.positives(k, 20), rng.distinct_positives(k, 20));
    const auto s = coefficient_sum_identity(r);
    CHECK(s.lhs == s.rhs);
  }
  CHECK_THROWS_AS(coefficient_sum_identity(RationalSeq::factored({1}, {2, 3})), InputError);
  CHECK_THROWS_AS(coefficient_sum_identity(RationalSeq::factored({1, 2}, {2, 2})), InputError);
  CHECK_THROWS_AS(coefficient_sum_identity(RationalSeq(Poly({1, 1}), {2})), InputError);
}
