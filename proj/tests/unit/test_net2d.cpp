#include "cmseq/errors.hpp"
#include "cmseq/net2d.hpp"
#include "doctest.h"
#include "random.hpp"

using namespace cmseq;

namespace {

using V = std::vector<Rational>;

Rational q(std::uint64_t v) { return Rational(v); }

}  // namespace

TEST_CASE("evaluators match the displayed formulas") {
  const Rational a1(2), a2(3), b1(1), b2(4);
  const auto i = Net2D::bicomp_i(a1, b1);
  const auto ii = Net2D::bicomp_ii(a1, b1, b2);
  const auto iii = Net2D::bicomp_iii(a1, a2, b1, b2);
  const auto bp = Net2D::bipoly(1, 2, 3, 4);
  const auto bw = Net2D::bipoly(1, 2, 3, 4, true);
  for (std::uint64_t m = 0; m < 6; ++m)
    for (std::uint64_t n = 0; n < 6; ++n) {
      const Rational M = q(m), N = q(n);
      CHECK(i(m, n) == (M + a1) / ((M + b1) + (M + a1) * N));
      CHECK(ii(m, n) == (M + a1) / ((M + b1) * (M + b2) + (M + a1) * N));
      CHECK(iii(m, n) == (M + a1) * (M + a2) / ((M + b1) * (M + b2) + (M + a1) * (M + a2) * N));
      CHECK(bp(m, n) == 1 / (1 + 2 * M + 3 * N + 4 * M * N));
      CHECK(bw(m, n) == (3 + 4 * M) / (1 + 2 * M + 3 * N + 4 * M * N));
      // Each BiComp net is 1/(psi(m) + n).
      CHECK(iii(m, n) == 1 / (iii.psi()->operator()(m) + N));
    }
  const auto c = Net2D::cajcm(RationalSeq::factored({1}, {2}), Rational(3, 2));
  CHECK(c(2, 4) == 1 / (Rational(3, 4) + 6));
  CHECK_FALSE(c.formula().empty());
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(Net2D::bipoly(0, 1, 1, 1), InputError);
  CHECK_THROWS_AS(Net2D::bipoly(1, -1, 1, 1), InputError);
  CHECK_THROWS_AS(Net2D::bicomp_i(0, 1), InputError);
  CHECK_THROWS_AS(Net2D::cajcm(RationalSeq::factored({1}, {2}), 0), InputError);
  CHECK_THROWS_AS(bicomp_iff(BiCompKind::II, V{1, 2}), InputError);
  CHECK_THROWS_AS(bicomp_iff(BiCompKind::I, V{1, -2}), InputError);
  CHECK_THROWS_AS(bipoly_iff(0, 1, 1, 1), InputError);
  // psi(m) = (m-1)/(m+1) vanishes at m = 1.
  CHECK_THROWS_AS(cajcm_classify(RationalSeq::factored({-1}, {1}), 1), InputError);
}

TEST_CASE("closed-form verdicts") {
  CHECK(bicomp_iff(BiCompKind::I, V{2, 1}).status == Status::Holds);
  CHECK(bicomp_iff(BiCompKind::II, V{5, 1, 3}).status == Status::Fails);
  CHECK(bicomp_iff(BiCompKind::III, V{2, 3, 1, 4}).status == Status::Holds);
  CHECK(bipoly_iff(1, 1, 1, 2).status == Status::Fails);
  CHECK(bipoly_iff(3, 2, 5, 0).status == Status::Holds);
  CHECK(bipoly_iff(1, 2, 1, 2).status == Status::Holds);
}

TEST_CASE("2-D oracle examples") {
  const auto bad = Net2D::bipoly(1, 1, 1, 2);
  CHECK(scan_2d(bad.evaluator(), Property::CM, {3, 3, 20, 20}).violated());
  const auto good = Net2D::bicomp_i(2, 1);
  CHECK_FALSE(scan_2d(good.evaluator(), Property::CM, {4, 4, 15, 15}).violated());
  const NetFn one = [](std::uint64_t, std::uint64_t) { return Rational(1); };
  CHECK_FALSE(scan_2d(one, Property::CM, {5, 5, 5, 5}).violated());
}

TEST_CASE("CAJCM examples") {
  auto r = cajcm_classify(RationalSeq::factored({1}, {2}), 1);
  CHECK(r.psi_is_ca);
  CHECK(r.net_is_cm);
  CHECK(r.consistent);

  r = cajcm_classify(RationalSeq::factored({6}, {5}), 1);
  CHECK_FALSE(r.psi_is_ca);
  REQUIRE(r.cm2d_verdict.violated());
  CHECK(r.consistent);
  const auto& w = *r.cm2d_verdict.witness;
  CHECK(w.orders == std::vector<std::uint64_t>{1, 0});
  CHECK(w.shifts == std::vector<std::uint64_t>{0, 0});
  CHECK(w.value == Rational(5, 6) - Rational(6, 7));

  r = cajcm_classify(RationalSeq(Poly({1}), {}), 1);
  CHECK(std::holds_alternative<DiffReport>(r.ca_verdict));
  CHECK(r.consistent);
  CHECK(r.net_is_cm);
}

TEST_CASE("scale invariance") {
  testing::Rng rng(51);
  for (int i = 0; i < 15; ++i) {
    const auto psi = RationalSeq::factored({rng.positive(6, 2)}, {rng.positive(6, 2)});
    const auto base = cajcm_classify(psi, 1, {}, {4, 4, 10, 10});
    const auto scaled = cajcm_classify(psi, rng.positive(5, 3), {}, {4, 4, 10, 10});
    CHECK(base.psi_is_ca == scaled.psi_is_ca);
    CHECK(base.net_is_cm == scaled.net_is_cm);
  }
}

TEST_CASE("bicomp_iff agrees with the 2-D oracle") {
  testing::Rng rng(52);
  int budget_misses = 0;
  for (auto kind : {BiCompKind::I, BiCompKind::II, BiCompKind::III}) {
    for (int i = 0; i < 50; ++i) {
      const std::size_t n = kind == BiCompKind::I ? 2 : kind == BiCompKind::II ? 3 : 4;
      V p;
      for (std::size_t j = 0; j < n; ++j) p.push_back(rng.positive(6, 2));
      const auto net = kind == BiCompKind::I    ? Net2D::bicomp_i(p[0], p[1])
                       : kind == BiCompKind::II ? Net2D::bicomp_ii(p[0], p[1], p[2])
                                                : Net2D::bicomp_iii(p[0], p[1], p[2], p[3]);
      const auto iff = bicomp_iff(kind, p);
      const bool violated = scan_2d(net.evaluator(), Property::CM, {6, 6, 20, 20}).violated();
      if (iff.status == Status::Holds) {
        CHECK_FALSE(violated);
      } else if (!violated) {
        ++budget_misses;
      }
    }
  }
  if (budget_misses) MESSAGE("closed form Fails but no violation within budget: " << budget_misses);
  CHECK(budget_misses <= 15);
}

TEST_CASE("targeted witness beyond the rectangular budget") {
  // Both zeros below both poles: the violation needs order 8 in m.
  const auto r = cajcm_classify(RationalSeq::factored({4, 4}, {Rational(21, 4), 8}), 1);
  CHECK_FALSE(r.psi_is_ca);
  CHECK_FALSE(r.cm2d_verdict.violated());
  REQUIRE(r.targeted_witness);
  CHECK(r.consistent);
  const auto net = Net2D::cajcm(RationalSeq::factored({4, 4}, {Rational(21, 4), 8}), 1);
  CHECK(reevaluate_witness(net.evaluator(), *r.targeted_witness) == r.targeted_witness->value);
  CHECK(r.targeted_witness->value.sign() < 0);
}
