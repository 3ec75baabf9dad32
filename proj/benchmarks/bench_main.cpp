#include <benchmark/benchmark.h>

#include <blocksched/exact.hpp>
#include <blocksched/heuristics.hpp>
#include <blocksched/noshow.hpp>
#include <blocksched/scenarios.hpp>
#include <blocksched/stochastic.hpp>

using namespace blocksched;
using namespace blocksched::literals;

namespace {

PatientTypeSpec spec(const char* name, double lam, double lsd, double mu, double msd, int ratio) {
  return {name, Duration::from_decimal(lam), Duration::from_decimal(lsd), Duration::from_decimal(mu),
          Duration::from_decimal(msd), ratio};
}

ClinicInstance example1() {
  ClinicInstance inst;
  inst.types = {spec("T1", 10, 0, 0, 0, 3), spec("T2", 15, 0, 0, 0, 2), spec("T3", 20, 0, 25, 0, 1),
                spec("T4", 15, 0, 35, 0, 3)};
  inst.regular_time = 300_min;
  inst.blocks = 2;
  return inst;
}

ClinicInstance table7() {
  ClinicInstance inst;
  inst.types = {spec("HC", 17.8, 10.7, 19.5, 8.2, 2), spec("LC", 8.5, 5.1, 16.6, 9, 4), spec("MC", 9.5, 6.1, 12.7, 7, 4),
                spec("L", 6, 3, 0, 0, 3),          spec("M", 10, 6, 0, 0, 2),          spec("H", 18, 12, 0, 0, 1)};
  inst.regular_time = 300_min;
  inst.blocks = 2;
  inst.costs = {0.2, 1, 1, 1.5, 1.5};
  return inst;
}

void BM_EvaluateAlgorithm4(benchmark::State& state) {
  const auto inst = table7();
  const auto tpl = algorithm4(inst);
  const auto real = mean_realization(tpl.slots);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(tpl, real, inst.regular_time));
}
BENCHMARK(BM_EvaluateAlgorithm4);

void BM_Algorithm4(benchmark::State& state) {
  const auto inst = table7();
  for (auto _ : state) benchmark::DoNotOptimize(algorithm4(inst));
}
BENCHMARK(BM_Algorithm4);

void BM_ExactBlock(benchmark::State& state) {
  const auto block = expand_block(example1());
  SearchConfig cfg;
  cfg.mode = state.range(0) ? SearchMode::branch_and_bound : SearchMode::enumerate;
  for (auto _ : state) benchmark::DoNotOptimize(solve_block_exact(block, CostWeights{}, cfg));
}
BENCHMARK(BM_ExactBlock)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ExactHorizon(benchmark::State& state) {
  const auto inst = example1();
  for (auto _ : state) benchmark::DoNotOptimize(solve_horizon_exact(inst, CostWeights{}, SearchConfig{}));
}
BENCHMARK(BM_ExactHorizon)->Unit(benchmark::kMillisecond);

void BM_MonteCarlo(benchmark::State& state) {
  const auto inst = table7();
  const auto tpl = algorithm4(inst);
  const auto set = draw_scenarios(inst, DistributionSpec{}, static_cast<std::size_t>(state.range(0)), mc_key(1));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_template_mc(tpl, set, inst.regular_time, inst.costs));
}
BENCHMARK(BM_MonteCarlo)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_NoShowEnumeration(benchmark::State& state) {
  const auto base = algorithm2(expand_block(table7()));
  const NoShowProbs p{0.2, 0.3};
  const auto plan = build_overbook_plan(base, OverbookStrategy::level_front, p);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_expected_metrics(plan, 150_min, p));
}
BENCHMARK(BM_NoShowEnumeration)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
