#include <benchmark/benchmark.h>

#include <numbers>

#include "qw/kernels.hpp"
#include "qw/state.hpp"

namespace {

constexpr int kD = 501;
constexpr double kTheta = std::numbers::pi / 4;

qw::StateVector make_state() { return qw::init_two_site(kD); }

void BM_Step(benchmark::State& state) {
    qw::StateVector s = make_state();
    for (auto _ : state) {
        qw::apply_step(s);
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * kD);
}
BENCHMARK(BM_Step);

void BM_Coin(benchmark::State& state) {
    qw::StateVector s = make_state();
    for (auto _ : state) {
        qw::apply_coin(s, kTheta);
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * kD);
}
BENCHMARK(BM_Coin);

void BM_PhaseElectricInline(benchmark::State& state) {
    qw::StateVector s = make_state();
    const double phi = qw::kTwoPi / kD;
    for (auto _ : state) {
        qw::apply_phase_e(s, phi);
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * kD);
}
BENCHMARK(BM_PhaseElectricInline);

void BM_PhaseElectricTable(benchmark::State& state) {
    qw::StateVector s = make_state();
    const auto table = qw::phase_table(kD, qw::kTwoPi / kD);
    for (auto _ : state) {
        qw::apply_phase_e_table(s, table);
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * kD);
}
BENCHMARK(BM_PhaseElectricTable);

void BM_WalkStep(benchmark::State& state) {
    qw::StateVector s = make_state();
    for (auto _ : state) {
        qw::apply_u(s, kTheta);
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * kD);
}
BENCHMARK(BM_WalkStep);

}  // namespace

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    return 0;
}
