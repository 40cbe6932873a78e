// Serial reference against the OpenMP kernel for the grid Fourier transform
// and the brute-force oracle trace.

#include "pscat/bruhat.hpp"
#include "pscat/packets.hpp"
#include "pscat/random.hpp"

#include <benchmark/benchmark.h>

using namespace pscat;

namespace {

const LocalField& field() {
    static const LocalField K({2, 1, 0}, 8, 4);
    return K;
}

GridForm sample_grid(int level) {
    RandomSource rng(11);
    return rng.s0_function(field(), static_cast<unsigned>(level), -level, level, 8).to_grid(field());
}

void BM_FourierGridSerial(benchmark::State& state) {
    GridForm g = sample_grid(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(fourier_grid_serial(field(), g));
}

void BM_FourierGridParallel(benchmark::State& state) {
    GridForm g = sample_grid(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(fourier_grid_parallel(field(), g));
}

OracleChain cutoff_chain(const MultFunction& f) {
    return {{OracleOp::Fourier}, {OracleOp::Cutoff, 1}, {OracleOp::FourierInverse}, {OracleOp::Cutoff, 1},
            {OracleOp::Smear, 0, &f}};
}

void BM_BruteTraceSerial(benchmark::State& state) {
    MultFunction f = MultFunction::sphere(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(brute_trace(field(), cutoff_chain(f), static_cast<int>(state.range(0)), false));
}

void BM_BruteTraceParallel(benchmark::State& state) {
    MultFunction f = MultFunction::sphere(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(brute_trace(field(), cutoff_chain(f), static_cast<int>(state.range(0)), true));
}

}  // namespace

BENCHMARK(BM_FourierGridSerial)->Arg(2)->Arg(3);
BENCHMARK(BM_FourierGridParallel)->Arg(2)->Arg(3);
BENCHMARK(BM_BruteTraceSerial)->Arg(2)->Arg(3);
BENCHMARK(BM_BruteTraceParallel)->Arg(2)->Arg(3);

BENCHMARK_MAIN();
