#include <benchmark/benchmark.h>

#include <numbers>

#include "qw/ensemble.hpp"

namespace {

qw::WalkConfig bench_config(int steps, int realizations) {
    qw::WalkConfig c;
    c.d = 501;
    c.theta = std::numbers::pi / 4;
    c.q = 1;
    c.r = 0.9;
    c.field = qw::FieldKind::Electric;
    c.steps = steps;
    c.realizations = realizations;
    c.master_seed = 11;
    return c;
}

void BM_Realization(benchmark::State& state) {
    const qw::WalkConfig c = bench_config(static_cast<int>(state.range(0)), 1);
    const qw::StateVector init = qw::init_single_site(c.d);
    std::uint64_t index = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(qw::run_realization(c, init, index++));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Realization)->Arg(100)->Arg(400)->Arg(1200);

void BM_Ensemble(benchmark::State& state) {
    const qw::WalkConfig c = bench_config(200, static_cast<int>(state.range(0)));
    const qw::StateVector init = qw::init_single_site(c.d);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qw::run_ensemble(c, init, 1));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 200);
}
BENCHMARK(BM_Ensemble)->Arg(32)->Arg(128);

}  // namespace

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    return 0;
}
