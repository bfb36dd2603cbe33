#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "hpt/critical.hpp"
#include "hpt/energy.hpp"
#include "hpt/grid.hpp"
#include "hpt/hermite.hpp"
#include "hpt/potential.hpp"
#include "hpt/profile.hpp"
#include "hpt/stencil.hpp"

namespace {

hpt::Field tanh_layer(std::size_t points, double eps) {
  return hpt::Field::sample(hpt::Grid(-1.0, 1.0, points), [eps](double x) { return std::tanh(x / eps); });
}

void BM_EnergyValueAndGradient(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto points = static_cast<std::size_t>(state.range(1));
  const hpt::Field u = tanh_layer(points, 0.05);
  const hpt::DiscreteFunctional f(u.grid(), n, hpt::make_quartic());
  const hpt::TermWeights c = hpt::energy_weights({n, 0.05, 0.01});
  std::vector<double> grad(points);
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.value_and_gradient(u.values(), c, grad));
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(points));
}
BENCHMARK(BM_EnergyValueAndGradient)->ArgsProduct({{2, 3, 4}, {1 << 10, 1 << 14}});

void BM_DiffOperatorApply(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const hpt::Field u = tanh_layer(1 << 14, 0.05);
  const hpt::DiffOperator op(u.grid(), k, hpt::staggered_placement(k));
  std::vector<double> out(op.rows());
  for (auto _ : state) {
    op.apply(u.values(), out);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(op.rows()));
}
BENCHMARK(BM_DiffOperatorApply)->DenseRange(1, 4);

void BM_HermiteSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  hpt::BoundaryData y{std::vector<double>(static_cast<std::size_t>(n), 0.3)};
  for (auto _ : state) benchmark::DoNotOptimize(hpt::solve_zeta(y));
}
BENCHMARK(BM_HermiteSolve)->DenseRange(2, hpt::kHermiteMaxOrder);

void BM_Quotient(benchmark::State& state) {
  const auto points = static_cast<std::size_t>(state.range(0));
  const hpt::Field u = hpt::Field::sample(hpt::Grid(0.0, 1.0, points), [](double x) { return std::tanh(4.0 * (x - 0.5)); });
  const hpt::DoubleWell w = hpt::make_quartic();
  for (auto _ : state) benchmark::DoNotOptimize(hpt::quotient(u, 2, w).value);
}
BENCHMARK(BM_Quotient)->Arg(501)->Arg(4001);

void BM_ProfileMinimize(benchmark::State& state) {
  const hpt::ProfileProblem p{2, 0.0, 10.0, static_cast<std::size_t>(state.range(0)), hpt::make_quartic()};
  hpt::ProfileOptions opts;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(hpt::minimize_profile(p, opts).energy_estimate);
}
BENCHMARK(BM_ProfileMinimize)->Arg(401)->Arg(801)->Unit(benchmark::kMillisecond);

void BM_LambdaEstimate(benchmark::State& state) {
  hpt::LambdaOptions opts;
  opts.starts = static_cast<std::size_t>(state.range(0));
  opts.threads = 1;
  const hpt::DoubleWell w = hpt::make_quartic();
  for (auto _ : state) benchmark::DoNotOptimize(hpt::estimate_lambda_n(2, w, opts).lambda_hat);
}
BENCHMARK(BM_LambdaEstimate)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
