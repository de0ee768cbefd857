#include <benchmark/benchmark.h>

#include "cmseq/criteria.hpp"
#include "cmseq/net2d.hpp"
#include "cmseq/partial_fractions.hpp"
#include "cmseq/weight.hpp"

using namespace cmseq;

namespace {

RationalSeq sample_seq(int k) {
  std::vector<Rational> a, b;
  for (int i = 1; i <= k; ++i) {
    a.push_back(Rational(2 * i + 1, 2));
    b.push_back(Rational(2 * i, 2) + Rational(1, 3));
  }
  return RationalSeq::factored(a, b);
}

void BM_PartialFractions(benchmark::State& state) {
  const auto r = sample_seq(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(partial_fractions(r));
}
BENCHMARK(BM_PartialFractions)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_Scan1D(benchmark::State& state) {
  const auto r = sample_seq(3);
  const SeqFn phi = [&](std::uint64_t n) { return r(n); };
  const Budget1D budget{static_cast<std::uint64_t>(state.range(0)), static_cast<std::uint64_t>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(scan_1d(phi, Property::CM, budget));
}
BENCHMARK(BM_Scan1D)->Args({12, 50})->Args({24, 200})->Args({64, 500});

void BM_Scan2D(benchmark::State& state) {
  const auto net = Net2D::bipoly(1, 2, 1, 2);
  const auto o = static_cast<std::uint64_t>(state.range(0)), s = static_cast<std::uint64_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(scan_2d(net.evaluator(), Property::CM, {o, o, s, s}));
}
BENCHMARK(BM_Scan2D)->Args({4, 10})->Args({6, 20})->Unit(benchmark::kMillisecond);

void BM_SignAnalyze(benchmark::State& state) {
  const auto wx = weight_from_partial_fractions(partial_fractions(RationalSeq::factored({6, 8, 14}, {5, 10, 13})));
  for (auto _ : state) benchmark::DoNotOptimize(sign_analyze(wx, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_SignAnalyze)->Arg(1024)->Arg(8192)->Unit(benchmark::kMillisecond);

void BM_PermNecessary(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  std::vector<Rational> a, b;
  // b exceeds a in every prefix, so no certificate exists and the search is exhaustive.
  for (int i = 1; i <= k; ++i) {
    a.push_back(Rational(i));
    b.push_back(Rational(i + 1));
  }
  for (auto _ : state) benchmark::DoNotOptimize(perm_necessary(a, b, Property::CM));
}
BENCHMARK(BM_PermNecessary)->DenseRange(4, 9, 1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
