#include <cmath>

#include "cmseq/errors.hpp"
#include "cmseq/diff_oracle.hpp"
#include "cmseq/poly.hpp"
#include "doctest.h"
#include "random.hpp"

using namespace cmseq;

namespace {

// φ(m) = 1/(m+1) = ∫ t^m dt, with ∇^j φ(m) = m! j! / (m+j+1)!.
Rational beta_diff(std::uint64_t j, std::uint64_t m) {
  return Rational(factorial(m) * factorial(j), factorial(m + j + 1));
}

}  // namespace

TEST_CASE("harmonic sequence differences match the beta closed form") {
  const SeqFn phi = [](std::uint64_t n) { return Rational(1, static_cast<long>(n + 1)); };
  for (std::uint64_t j = 0; j <= 15; ++j)
    for (std::uint64_t m = 0; m <= 20; ++m) CHECK(forward_diff_1d(phi, j, m) == beta_diff(j, m));
}

TEST_CASE("geometric sequences") {
  testing::Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const Rational t = rng.rational(0, 1, 9);
    const SeqFn phi = [t](std::uint64_t n) { return pow(t, static_cast<unsigned>(n)); };
    const auto j = static_cast<std::uint64_t>(rng.integer(0, 10));
    const auto m = static_cast<std::uint64_t>(rng.integer(0, 10));
    CHECK(forward_diff_1d(phi, j, m) == pow(t, static_cast<unsigned>(m)) * pow(1 - t, static_cast<unsigned>(j)));
    CHECK_FALSE(scan_1d(phi, Property::CM, {8, 12}).violated());
  }
}

TEST_CASE("step operators compose") {
  testing::Rng rng(6);
  for (int i = 0; i < 40; ++i) {
    std::vector<Rational> c;
    for (int j = 0; j < 5; ++j) c.push_back(rng.rational(-5, 5));
    const Poly p(c);
    const SeqFn phi = [p](std::uint64_t n) { return p(Rational(static_cast<long>(n))); };
    const auto a = static_cast<std::uint64_t>(rng.integer(1, 4)), b = static_cast<std::uint64_t>(rng.integer(1, 4));
    const auto s = static_cast<std::uint64_t>(rng.integer(0, 10));
    const std::uint64_t ab[] = {a + b}, sa[] = {a}, sb[] = {b}, both[] = {a, b};
    // ∇_{a+b} = ∇_a + ∇_b − ∇_a ∇_b
    CHECK(forward_diff_general(phi, ab, s) ==
          forward_diff_general(phi, sa, s) + forward_diff_general(phi, sb, s) - forward_diff_general(phi, both, s));
    const std::vector<std::uint64_t> ones(4, 1);
    CHECK(forward_diff_general(phi, ones, s) == forward_diff_1d(phi, 4, s));
  }
  const SeqFn id = [](std::uint64_t n) { return Rational(static_cast<long>(n)); };
  CHECK_THROWS_AS(forward_diff_general(id, std::span<const std::uint64_t>{}, 0), InputError);
  CHECK_THROWS_AS(forward_diff_general(id, std::vector<std::uint64_t>(25, 1), 0), BudgetError);
}

TEST_CASE("2-D mixed differences") {
  const NetFn f = [](std::uint64_t m, std::uint64_t n) {
    return Rational(1, static_cast<long>(m + 1)) * Rational(1, static_cast<long>(n + 2));
  };
  // Product net: mixed differences factor.
  for (std::uint64_t j1 = 0; j1 < 4; ++j1)
    for (std::uint64_t j2 = 0; j2 < 4; ++j2) {
      const Rational expect = beta_diff(j1, 3) * beta_diff(j2, 5);
      CHECK(mixed_diff_2d(f, j1, j2, 3, 4) == expect);
      std::vector<Point2> steps;
      for (std::uint64_t i = 0; i < j1; ++i) steps.push_back({1, 0});
      for (std::uint64_t i = 0; i < j2; ++i) steps.push_back({0, 1});
      if (!steps.empty()) CHECK(forward_diff_general(f, steps, Point2{3, 4}) == expect);
    }
  CHECK_FALSE(scan_2d(f, Property::CM, {4, 4, 8, 8}).violated());
}

TEST_CASE("(n+6)/(n+5) first difference witness") {
  const auto r = RationalSeq::factored({6}, {5});
  const SeqFn phi = [&r](std::uint64_t n) { return r(n); };
  const auto rep = scan_1d(phi, Property::CA);
  REQUIRE(rep.violated());
  CHECK(rep.witness->orders == std::vector<std::uint64_t>{1});
  CHECK(rep.witness->shifts == std::vector<std::uint64_t>{0});
  CHECK(rep.witness->value == Rational(1, 30));
  CHECK(reevaluate_witness(phi, *rep.witness) == rep.witness->value);
  CHECK_FALSE(scan_1d(phi, Property::CM).violated());
}

TEST_CASE("CM requires order 0, CA does not constrain it") {
  const SeqFn neg = [](std::uint64_t n) { return Rational(-1, static_cast<long>(n + 1)); };
  auto cm = scan_1d(neg, Property::CM, {4, 4});
  REQUIRE(cm.violated());
  CHECK(cm.witness->orders[0] == 0);
  // Its differences of order >= 1 are -m!j!/(m+j+1)! <= 0.
  CHECK_FALSE(scan_1d(neg, Property::CA, {6, 10}).violated());
}

TEST_CASE("witnesses are the first violation in (order, shift) order") {
  testing::Rng rng(8);
  for (int i = 0; i < 60; ++i) {
    std::vector<Rational> c;
    for (int j = 0; j < 4; ++j) c.push_back(rng.rational(-3, 3));
    const Poly p(c);
    const SeqFn phi = [p](std::uint64_t n) { return p(Rational(static_cast<long>(n))); };
    const Budget1D budget{5, 6};
    const auto rep = scan_1d(phi, Property::CM, budget);
    std::optional<std::pair<std::uint64_t, std::uint64_t>> first;
    for (std::uint64_t j = 0; j <= budget.max_order && !first; ++j)
      for (std::uint64_t m = 0; m <= budget.max_shift && !first; ++m)
        if (forward_diff_1d(phi, j, m).sign() < 0) first = {j, m};
    REQUIRE(rep.violated() == first.has_value());
    if (first) {
      CHECK(rep.witness->orders[0] == first->first);
      CHECK(rep.witness->shifts[0] == first->second);
    }
  }
}

TEST_CASE("2-D witness re-evaluates") {
  const NetFn f = [](std::uint64_t m, std::uint64_t n) {
    return Rational(1) / (Rational(1) + Rational(static_cast<long>(m)) + Rational(static_cast<long>(n)) +
                          2 * Rational(static_cast<long>(m * n)));
  };
  const auto rep = scan_2d(f, Property::CM, {6, 6, 20, 20});
  REQUIRE(rep.violated());
  CHECK(reevaluate_witness(f, *rep.witness) == rep.witness->value);
  CHECK(rep.witness->value.sign() < 0);
}

TEST_CASE("budgets") {
  const SeqFn phi = [](std::uint64_t n) { return Rational(static_cast<long>(n)); };
  CHECK_THROWS_AS(scan_1d(phi, Property::CM, {0, 5}), BudgetError);
  const NetFn f = [](std::uint64_t, std::uint64_t) { return Rational(1); };
  CHECK_THROWS_AS(scan_2d(f, Property::CM, {0, 0, 5, 5}), BudgetError);
}

TEST_CASE("float scan") {
  const FloatSeqFn e = [](std::uint64_t n) { return std::exp(-0.5 * static_cast<double>(n)); };
  CHECK_FALSE(scan_1d_float(e, Property::CM, {12, 30}).violated());
  const FloatSeqFn bad = [](std::uint64_t n) { return n == 3 ? 1.0 : 0.5; };
  const auto rep = scan_1d_float(bad, Property::CM, {4, 5});
  CHECK(rep.violated());
  CHECK(rep.float_mode);
  // Differences of a constant cancel to rounding noise and count as zero.
  const FloatSeqFn c = [](std::uint64_t) { return 0.1; };
  CHECK_FALSE(scan_1d_float(c, Property::CM, {20, 20}).violated());
}
