#include <benchmark/benchmark.h>

#include "rsfade/adi_solver.hpp"
#include "rsfade/coefficients.hpp"
#include "rsfade/problem.hpp"
#include "rsfade/riesz_operators.hpp"

namespace {

void BM_OmegaCoefficients(benchmark::State& state) {
  const rsfade::FractionalOrder gamma(1.8);
  const auto terms = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rsfade::omega_coefficients(gamma, terms));
}
BENCHMARK(BM_OmegaCoefficients)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_AssembleRieszMatrix(benchmark::State& state) {
  const rsfade::FractionalOrder gamma(1.6);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rsfade::assemble_riesz_matrix(gamma, n, 1.0 / static_cast<double>(n + 1)));
  }
}
BENCHMARK(BM_AssembleRieszMatrix)->RangeMultiplier(2)->Range(32, 256);

void BM_BuildSweepOperators(benchmark::State& state) {
  const auto problem = rsfade::example1();
  const rsfade::GridSpec grid(problem.domain, static_cast<std::size_t>(state.range(0)),
                              static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rsfade::build_sweep_operators(problem, grid, 1e-3));
}
BENCHMARK(BM_BuildSweepOperators)->RangeMultiplier(2)->Range(32, 256);

void BM_PeacemanRachfordStep(benchmark::State& state) {
  const auto problem = rsfade::example1();
  const rsfade::GridSpec grid(problem.domain, static_cast<std::size_t>(state.range(0)),
                              static_cast<std::size_t>(state.range(0)));
  const auto ops = rsfade::build_sweep_operators(problem, grid, 1e-3);
  rsfade::SolutionField field{grid.sample(problem.initial), 0.0, 0};
  const Eigen::MatrixXd source = grid.sample([&](double x, double y) { return problem.source(x, y, 0.0); });
  rsfade::PeacemanRachfordStepper stepper(ops);
  for (auto _ : state) {
    stepper.advance(field, source);
    benchmark::DoNotOptimize(field.values.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.nx() * grid.ny()));
}
BENCHMARK(BM_PeacemanRachfordStep)->RangeMultiplier(2)->Range(16, 256);

}  // namespace

BENCHMARK_MAIN();
