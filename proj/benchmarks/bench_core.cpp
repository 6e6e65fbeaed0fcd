#include <benchmark/benchmark.h>

#include <cmath>

#include "falva/operators.hpp"
#include "falva/optimality.hpp"
#include "falva/problems.hpp"
#include "falva/solver.hpp"

using namespace falva;

namespace {

SampledFunction bench_input(std::size_t n) {
  const Grid grid = make_grid(0.0, 1.0, n, 1.0);
  return sample([](double tau) { return Complex{std::sin(3.0 * tau) + tau * tau, 0.0}; },
                grid);
}

void BM_LeftDerivative(benchmark::State& state) {
  const SampledFunction f = bench_input(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(left_rl_derivative(f, 0.5));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LeftDerivative)->RangeMultiplier(2)->Range(256, 4096)->Complexity();

void BM_LeftIntegral(benchmark::State& state) {
  const SampledFunction f = bench_input(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(left_rl_integral(f, 0.5));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LeftIntegral)->RangeMultiplier(2)->Range(256, 4096)->Complexity();

void BM_CombinedDerivative(benchmark::State& state) {
  const SampledFunction f = bench_input(static_cast<std::size_t>(state.range(0)));
  const OrderSpec order(0.6, 0.8, Complex{0.3, 0.2});
  for (auto _ : state) {
    benchmark::DoNotOptimize(combined_derivative(f, order));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CombinedDerivative)->RangeMultiplier(2)->Range(256, 4096)->Complexity();

void BM_ActionValue(benchmark::State& state) {
  const SampledFunction q = bench_input(static_cast<std::size_t>(state.range(0)));
  const OrderSpec order(0.5, 1.0, kGammaLeftSided);
  const Lagrangian free = make_free_lagrangian();
  for (auto _ : state) {
    benchmark::DoNotOptimize(action_value(q, free, order));
  }
}
BENCHMARK(BM_ActionValue)->Arg(257)->Arg(1025);

void BM_ElResidual(benchmark::State& state) {
  const SampledFunction q = bench_input(static_cast<std::size_t>(state.range(0)));
  const OrderSpec order(0.7, 1.0, kGammaRightSided);
  const Lagrangian osc = make_oscillator_lagrangian();
  for (auto _ : state) {
    benchmark::DoNotOptimize(el_residual(q, osc, order));
  }
}
BENCHMARK(BM_ElResidual)->Arg(257)->Arg(1025);

void BM_DiscreteGradient(benchmark::State& state) {
  const SampledFunction q = bench_input(static_cast<std::size_t>(state.range(0)));
  const OrderSpec order(0.9, 1.0, kGammaLeftSided);
  const Lagrangian free = make_free_lagrangian();
  for (auto _ : state) {
    benchmark::DoNotOptimize(discrete_action_gradient(q, free, order));
  }
}
BENCHMARK(BM_DiscreteGradient)->Arg(257)->Arg(1025);

void BM_MinimizeOscillator(benchmark::State& state) {
  const Grid grid = make_grid(0.0, 1.0, static_cast<std::size_t>(state.range(0)), 1.0);
  SolveOptions options;
  options.gradient_tolerance = 1e-6;
  options.max_iterations = 2000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimize_action(make_oscillator_lagrangian(),
                                             OrderSpec(1.0, 1.0, kGammaLeftSided), grid,
                                             0.0, 1.0, options));
  }
}
BENCHMARK(BM_MinimizeOscillator)->Arg(129)->Arg(257)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
