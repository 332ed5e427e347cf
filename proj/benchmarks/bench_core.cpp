#include <benchmark/benchmark.h>

#include "tcd/analytic.hpp"
#include "tcd/oracle.hpp"
#include "tcd/quadrature.hpp"
#include "tcd/special_functions.hpp"
#include "tcd/spectrum.hpp"

namespace {

void BM_Laguerre(benchmark::State& state) {
    const tcd::LaguerreSpec spec{static_cast<int>(state.range(0)), 2.5};
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tcd::laguerre(spec, x));
        x = x < 50.0 ? x + 0.37 : 0.1;
    }
}
BENCHMARK(BM_Laguerre)->Arg(2)->Arg(10)->Arg(40);

void BM_Energy(benchmark::State& state) {
    const tcd::ModelParams p(1.0, 0.3, 1.0);
    const auto ch = tcd::make_channel(p, -4);
    int n = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tcd::energy(p, ch, n, tcd::Branch::particle));
        n = n < 50 ? n + 1 : 1;
    }
}
BENCHMARK(BM_Energy);

void BM_Spectrum(benchmark::State& state) {
    const tcd::ModelParams p(1.0, 0.0, 1.0);
    const auto kappas = tcd::kappa_span(-10, 10);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tcd::spectrum(p, kappas, 4, tcd::BranchSelection::both));
    }
}
BENCHMARK(BM_Spectrum);

void BM_Wavefunctions(benchmark::State& state) {
    const tcd::ModelParams p(1.0, 0.0, 1.0);
    const auto ch = tcd::make_channel(p, -3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tcd::wavefunctions(p, ch, 4, tcd::Branch::particle));
    }
}
BENCHMARK(BM_Wavefunctions);

void BM_GaussLaguerreRule(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(tcd::GaussLaguerreRule(static_cast<int>(state.range(0)), 3.0));
    }
}
BENCHMARK(BM_GaussLaguerreRule)->Arg(32)->Arg(128);

void BM_ShootEigenvalue(benchmark::State& state) {
    const tcd::ModelParams p(1.0, 0.0, 1.0);
    const auto ch = tcd::make_channel(p, -2);
    const int nodes = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(tcd::shoot_eigenvalue(p, ch, tcd::Component::upper, nodes));
    }
}
BENCHMARK(BM_ShootEigenvalue)->Arg(0)->Arg(4)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
