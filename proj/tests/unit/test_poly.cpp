#include "cmseq/errors.hpp"
#include "cmseq/poly.hpp"
#include "doctest.h"
#include "random.hpp"

using namespace cmseq;

TEST_CASE("shift-root expansion") {
  const std::vector<Rational> a{Rational(3, 2), 2, 4};
  const Poly p = Poly::from_shift_roots(a);
  // (x+3/2)(x+2)(x+4) = x^3 + 15/2 x^2 + 17 x + 12
  CHECK(p == Poly({12, 17, Rational(15, 2), 1}));
  CHECK(p.degree() == 3);
  CHECK(p(Rational(-2)) == 0);
  CHECK(Poly::from_shift_roots({}) == Poly::constant(1));
  CHECK(Poly().degree() == -1);
  CHECK(Poly({1, 2, 0, 0}).degree() == 1);
}

TEST_CASE("divmod reconstructs the dividend") {
  testing::Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    std::vector<Rational> pc, dc;
    const int dp = static_cast<int>(rng.integer(0, 6)), dd = static_cast<int>(rng.integer(0, 4));
    for (int j = 0; j <= dp; ++j) pc.push_back(rng.rational(-9, 9));
    for (int j = 0; j <= dd; ++j) dc.push_back(rng.rational(-9, 9));
    dc.back() = rng.positive(5);
    const Poly p(pc), d(dc);
    const auto [q, r] = p.divmod(d);
    CHECK(q * d + r == p);
    CHECK(r.degree() < d.degree());
  }
  CHECK_THROWS(Poly({1}).divmod(Poly()));
}

TEST_CASE("double evaluation agrees with exact evaluation") {
  const Poly p({Rational(1, 3), -2, Rational(5, 7)});
  CHECK(p(2.5) == doctest::Approx(p(Rational(5, 2)).to_double()));
}

TEST_CASE("RationalSeq validation and canonical poles") {
  CHECK_THROWS_AS(RationalSeq::factored({1}, {0}), InputError);
  CHECK_THROWS_AS(RationalSeq::factored({1}, {-1}), InputError);
  // deg p = k + 2
  CHECK_THROWS_AS(RationalSeq::factored({1, 2, 3}, {1}), InputError);
  CHECK_NOTHROW(RationalSeq::factored({1, 2}, {1}));

  const auto r = RationalSeq::factored({4, 1}, {3, 2, 3});
  REQUIRE(r.poles().size() == 2);
  CHECK(r.poles()[0] == Pole{2, 1});
  CHECK(r.poles()[1] == Pole{3, 2});
  CHECK(r.pole_shifts() == std::vector<Rational>{2, 3, 3});
  CHECK(r.pole_count() == 3);
  CHECK_FALSE(r.has_simple_poles());
  CHECK(*r.zero_shifts() == std::vector<Rational>{1, 4});
  CHECK(r(0) == Rational(4, 18));
  CHECK(r.eval(1.0) == doctest::Approx(10.0 / 48.0));
}

TEST_CASE("plus_constant") {
  const auto r = RationalSeq::factored({6}, {5});
  const auto s = r.plus_constant(Rational(1, 2));
  CHECK_FALSE(s.zero_shifts().has_value());
  for (std::uint64_t n = 0; n < 10; ++n) CHECK(s(n) == r(n) + Rational(1, 2));
}
