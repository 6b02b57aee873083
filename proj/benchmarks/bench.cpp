#include <random>
#include <string>

#include <benchmark/benchmark.h>

#include "stabpres/io.hpp"

using namespace stabpres;

namespace {

GroupAction load(const std::string& name) {
  auto a = io::action_from_json(io::load_json(std::string(STABPRES_FIXTURE_DIR) + "/" + name + ".json"));
  return validate_without_rotations(std::move(a));
}

void BM_BuildPresentation(benchmark::State& state) {
  const auto a = load("f3");
  const auto q = build_quotient(a);
  for (auto _ : state) benchmark::DoNotOptimize(build_presentation(a, q));
}
BENCHMARK(BM_BuildPresentation)->Unit(benchmark::kMillisecond);

void BM_ToddCoxeterF3(benchmark::State& state) {
  const auto a = load("f3");
  const auto p = build_presentation(a, build_quotient(a));
  for (auto _ : state) benchmark::DoNotOptimize(todd_coxeter(p, 100000));
}
BENCHMARK(BM_ToddCoxeterF3)->Unit(benchmark::kMillisecond);

void BM_ArmstrongExpressAll(benchmark::State& state) {
  const auto a = load(state.range(0) == 2 ? "f2" : "f3");
  const auto q = build_quotient(a);
  for (auto _ : state)
    for (const auto& g : a.group().elements())
      benchmark::DoNotOptimize(armstrong_express(a, q, vertex_at(0), g));
}
BENCHMARK(BM_ArmstrongExpressAll)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_ContractEquator(benchmark::State& state) {
  const auto X = load("f3").complex();
  const auto loop = validate_path(X, {"+x", "b(+x,+y)", "+y", "b(+y,-x)", "-x", "b(-x,-y)", "-y",
                                      "b(+x,-y)", "+x"});
  for (auto _ : state) benchmark::DoNotOptimize(contract_loop(X, loop));
}
BENCHMARK(BM_ContractEquator)->Unit(benchmark::kMillisecond);

void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> entry(-9, 9);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(rng);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(8)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_AbelianizeF3(benchmark::State& state) {
  const auto a = load("f3");
  const auto p = build_presentation(a, build_quotient(a));
  for (auto _ : state) benchmark::DoNotOptimize(presentation_abelianization(p));
}
BENCHMARK(BM_AbelianizeF3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
