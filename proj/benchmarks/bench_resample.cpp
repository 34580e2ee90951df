#include <cmath>
#include <random>

#include <benchmark/benchmark.h>

#include "faceflow/flowgen.hpp"

using namespace faceflow;

namespace {

// A landmark-sized anchor cloud with a smooth displacement field attached.
ScatteredFlowSamples sample_cloud(int n, double span) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> d(0.1 * span, 0.9 * span);
    ScatteredFlowSamples s;
    for (int i = 0; i < n; ++i) {
        Vec2 p{d(rng), d(rng)};
        s.anchors.push_back(p);
        s.vectors.push_back(
            {std::sin(p.x / 40.0) * 2.0, std::cos(p.y / 40.0) * 2.0});
    }
    return s;
}

} // namespace

static void BM_ResampleCubic(benchmark::State& state) {
    const int side = int(state.range(0));
    const auto samples = sample_cloud(2000, double(side));
    for (auto _ : state) {
        FlowField f = resample_to_grid(samples, side, side,
                                       ResampleMethod::kPiecewiseCubic);
        benchmark::DoNotOptimize(f);
    }
    state.SetItemsProcessed(int64_t(state.iterations()) * side * side);
}
BENCHMARK(BM_ResampleCubic)->Arg(128)->Arg(256)->Arg(512);

static void BM_ResampleLinear(benchmark::State& state) {
    const int side = int(state.range(0));
    const auto samples = sample_cloud(2000, double(side));
    for (auto _ : state) {
        FlowField f = resample_to_grid(samples, side, side,
                                       ResampleMethod::kPiecewiseLinear);
        benchmark::DoNotOptimize(f);
    }
    state.SetItemsProcessed(int64_t(state.iterations()) * side * side);
}
BENCHMARK(BM_ResampleLinear)->Arg(128)->Arg(256)->Arg(512);

BENCHMARK_MAIN();
