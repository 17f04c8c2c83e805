#include <benchmark/benchmark.h>

#include <numbers>

#include "qcgeo/field_synth.hpp"
#include "qcgeo/geodesic.hpp"
#include "qcgeo/metric.hpp"
#include "qcgeo/phase_opt.hpp"
#include "qcgeo/propagate.hpp"

using namespace qcgeo;

namespace {

constexpr double pi = std::numbers::pi;
const GroupParams kStart{pi / 8, pi / 8, 0.0};
const GroupParams kEnd{5 * pi / 8, 7 * pi / 8, -0.4};

void BM_metric_at(benchmark::State& state) {
  const AnisotropyWeights w{{1.2, 0.8, 1.5}};
  const GroupParams p{1.1, 0.7, -0.2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(metric_at(GroupTag::SU2, w, p));
  }
}
BENCHMARK(BM_metric_at);

void BM_christoffel_analytic(benchmark::State& state) {
  const GroupParams p{1.1, 0.7, -0.2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(christoffel_analytic(GroupTag::SU2, p));
  }
}
BENCHMARK(BM_christoffel_analytic);

void BM_christoffel_numeric(benchmark::State& state) {
  const AnisotropyWeights w{{1.2, 0.8, 1.5}};
  MetricFn fn = [&](const GroupParams& q) { return metric_at(GroupTag::SU2, w, q); };
  const GroupParams p{1.1, 0.7, -0.2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(christoffel_numeric(fn, p));
  }
}
BENCHMARK(BM_christoffel_numeric);

void BM_integrate_ivp(benchmark::State& state) {
  const std::array<double, 3> v0{0.4, 1.8, -0.3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_ivp(GroupTag::SU2, {}, kStart, v0, 1.0,
                                           static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_integrate_ivp)->Arg(201)->Arg(2001);

void BM_solve_bvp(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_bvp(GroupTag::SU2, {}, kStart, kEnd));
  }
}
BENCHMARK(BM_solve_bvp)->Unit(benchmark::kMillisecond);

void BM_reduced_geodesic(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        reduced_geodesic(GroupTag::SU2, {pi / 8, pi / 8}, {5 * pi / 8, 7 * pi / 8}, 2001));
  }
}
BENCHMARK(BM_reduced_geodesic)->Unit(benchmark::kMillisecond);

void BM_optimal_phase(benchmark::State& state) {
  const PrescribedPath path = ramp_squared_path(GroupTag::SU11, 2001);
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimal_phase(path));
  }
}
BENCHMARK(BM_optimal_phase);

void BM_verify_trajectory(benchmark::State& state) {
  const Trajectory traj = solve_bvp(GroupTag::SU2, {}, kStart, kEnd);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_trajectory(traj));
  }
}
BENCHMARK(BM_verify_trajectory)->Unit(benchmark::kMillisecond);

void BM_path_oracle(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(path_oracle(GroupTag::SU2, {}, kStart, kEnd, 50, 400));
  }
}
BENCHMARK(BM_path_oracle)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
