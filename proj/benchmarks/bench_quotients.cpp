#include <benchmark/benchmark.h>

#include "cgt/fixtures.hpp"
#include "cgt/quotients.hpp"
#include "cgt/subdirect.hpp"

namespace {

void BM_ToddCoxeterDroms(benchmark::State& state) {
  const auto p = cgt::p4().presentation();
  const auto h = cgt::fixtures::droms_index2_subgroup();
  for (auto _ : state) benchmark::DoNotOptimize(cgt::todd_coxeter(p, h, 100));
}
BENCHMARK(BM_ToddCoxeterDroms);

void BM_ToddCoxeterSymmetric(benchmark::State& state) {
  // S_n as <a, b | a^2, b^n, (ab)^(n-1)> over the trivial subgroup.
  const auto n = static_cast<long long>(state.range(0));
  cgt::FinitePresentation p{cgt::GenAlphabet({"a", "b"}), {}};
  const cgt::Word a = cgt::Word::generator(0), b = cgt::Word::generator(1);
  cgt::Word ab;
  for (long long i = 0; i + 1 < n; ++i) ab *= a * b;
  p.relators = {cgt::Word::power(0, 2), cgt::Word::power(1, n), ab};
  for (auto _ : state) benchmark::DoNotOptimize(cgt::todd_coxeter(p, {}, 100000));
}
BENCHMARK(BM_ToddCoxeterSymmetric)->DenseRange(3, 6);

void BM_HomsToSn(benchmark::State& state) {
  const auto p = cgt::p4().presentation();
  for (auto _ : state) benchmark::DoNotOptimize(cgt::enumerate_homs(p, static_cast<std::size_t>(state.range(0)), 10'000'000));
}
BENCHMARK(BM_HomsToSn)->DenseRange(2, 4);

void BM_MembershipNegative(benchmark::State& state) {
  const auto g = cgt::fixtures::group("P4");
  const auto& al = g.alphabet();
  const std::vector<cgt::Word> h{al.parse("a"), al.parse("b"), al.parse("c")};
  const auto d = al.parse("d");
  for (auto _ : state) benchmark::DoNotOptimize(cgt::membership_semidecide(g, h, d, cgt::SearchBudget{8, 2, 1'000'000}));
}
BENCHMARK(BM_MembershipNegative);

void BM_ClassifyZKernel(benchmark::State& state) {
  const auto s = cgt::fixtures::subdirect("z_kernel_p4xp4");
  for (auto _ : state) benchmark::DoNotOptimize(cgt::classify_structure(s, cgt::ClassifyBudget{}));
}
BENCHMARK(BM_ClassifyZKernel)->Unit(benchmark::kMillisecond);

}  // namespace
