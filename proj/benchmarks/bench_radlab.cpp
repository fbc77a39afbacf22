#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "radlab/certificate.hpp"
#include "radlab/curve.hpp"
#include "radlab/identity.hpp"
#include "radlab/radial_solver.hpp"

using namespace radlab;

namespace {

constexpr double pi = std::numbers::pi;

RadialProblem bn(double lambda) {
    RadialProblem prob;
    prob.nl = brezis_nirenberg(lambda, 5.0);
    return prob;
}

void BM_IntegrateLinear(benchmark::State& state) {
    RadialProblem prob;
    prob.nl = PowerSumNonlinearity(pi * pi);
    for (auto _ : state) benchmark::DoNotOptimize(integrate_ivp(prob, 1.0, 1.0));
}
BENCHMARK(BM_IntegrateLinear)->Unit(benchmark::kMillisecond);

void BM_ShootBrezisNirenberg(benchmark::State& state) {
    const RadialProblem prob = bn(0.75 * pi * pi);
    for (auto _ : state) benchmark::DoNotOptimize(shoot_bvp(prob, 0.1, 10.0));
}
BENCHMARK(BM_ShootBrezisNirenberg)->Unit(benchmark::kMillisecond);

void BM_GeneralIdentity(benchmark::State& state) {
    const RadialProblem prob = bn(0.75 * pi * pi);
    const RadialSolution sol = shoot_bvp(prob, 0.1, 10.0);
    const TestFunction psi = TestFunction::sine(std::sqrt(3.0) * pi);
    for (auto _ : state) benchmark::DoNotOptimize(identity_residual_general(sol, prob, psi));
}
BENCHMARK(BM_GeneralIdentity)->Unit(benchmark::kMicrosecond);

void BM_TraceCurve(benchmark::State& state) {
    const auto amps = logspace(1e-3, 1e3, static_cast<std::size_t>(state.range(0)));
    const auto threads = static_cast<unsigned>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(trace_curve(6.0, amps, {}, threads));
}
BENCHMARK(BM_TraceCurve)->Args({200, 1})->Args({200, 0})->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Certificate(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(certify_nonexistence(1.0, 6.0));
}
BENCHMARK(BM_Certificate)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
