#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "cgt/bs.hpp"
#include "cgt/gog.hpp"
#include "cgt/raag.hpp"

namespace {

std::vector<cgt::Word> random_words(std::uint32_t gens, std::size_t len, std::size_t count) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint32_t> gen(0, gens - 1);
  std::bernoulli_distribution sign(0.5);
  std::vector<cgt::Word> out(count);
  for (auto& w : out) {
    for (std::size_t i = 0; i < len; ++i) w.push_back(cgt::Letter{gen(rng), static_cast<std::int8_t>(sign(rng) ? 1 : -1)});
  }
  return out;
}

void BM_RaagNormalForm(benchmark::State& state) {
  const auto p = cgt::p4();
  const auto words = random_words(4, static_cast<std::size_t>(state.range(0)), 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(p.normal_form(words[i++ % words.size()]));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RaagNormalForm)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_RaagBall(benchmark::State& state) {
  const auto p = cgt::p4();
  for (auto _ : state) benchmark::DoNotOptimize(cgt::enumerate_ball(p, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_RaagBall)->DenseRange(3, 6);

void BM_BsNormalForm(benchmark::State& state) {
  const cgt::bs::Params p(2, 3);
  const auto words = random_words(2, static_cast<std::size_t>(state.range(0)), 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(cgt::bs::normal_form(p, words[i++ % words.size()]));
}
BENCHMARK(BM_BsNormalForm)->RangeMultiplier(4)->Range(16, 256);

void BM_GogBritton(benchmark::State& state) {
  const auto g = cgt::baumslag_solitar_gog(2, 3);
  const auto words = random_words(2, static_cast<std::size_t>(state.range(0)), 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(g.word_problem(words[i++ % words.size()]));
}
BENCHMARK(BM_GogBritton)->RangeMultiplier(4)->Range(16, 256);

void BM_BsH1(benchmark::State& state) {
  const cgt::bs::Params p(2, 3);
  cgt::bs::XiWord w;
  for (long long i = 0; i < state.range(0); ++i) w.push_back({i % 7 - 3, i % 3 ? 1 : -1});
  for (auto _ : state) benchmark::DoNotOptimize(cgt::bs::h1_image(p, w));
}
BENCHMARK(BM_BsH1)->RangeMultiplier(4)->Range(16, 1024);

}  // namespace
