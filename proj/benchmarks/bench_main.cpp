#include <benchmark/benchmark.h>

#include "binet/io.hpp"

namespace {

void BM_BuildClosedPair(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const binet::ShapeParams p = binet::solve_boundary_shape(n, n);
  for (auto _ : state) {
    auto pair = binet::build_closed_pair(p, 0.7);
    benchmark::DoNotOptimize(pair.circles.size());
  }
}
BENCHMARK(BM_BuildClosedPair)->Arg(3)->Arg(10)->Arg(20);

void BM_VerifyPair(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const binet::ShapeParams p = binet::solve_boundary_shape(n, n);
  const auto pair = binet::build_closed_pair(p, 0.7);
  for (auto _ : state) {
    auto rep = binet::verify_pair(pair);
    benchmark::DoNotOptimize(rep.overall_pass);
  }
}
BENCHMARK(BM_VerifyPair)->Arg(3)->Arg(10);

void BM_ApproximateQ(benchmark::State& state) {
  double q = 0.6180339887498949;
  for (auto _ : state) {
    auto nn = binet::approximate_q(q, 1e-3);
    benchmark::DoNotOptimize(nn.first);
  }
}
BENCHMARK(BM_ApproximateQ);

void BM_GRecurrence(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const binet::ShapeParams p = binet::solve_boundary_shape(n, n);
  const auto [g1, g2] = binet::natural_g_init(p);
  for (auto _ : state) {
    auto g = binet::g_recurrence(p, g1, g2);
    benchmark::DoNotOptimize(g.boundary_residual);
  }
}
BENCHMARK(BM_GRecurrence)->Arg(10)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
