#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "faceflow/delaunay.hpp"

using namespace faceflow;

namespace {

std::vector<Vec2> random_points(int n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(0.0, 512.0);
    std::vector<Vec2> pts;
    pts.reserve(size_t(n));
    for (int i = 0; i < n; ++i) pts.push_back({d(rng), d(rng)});
    return pts;
}

} // namespace

// Triangulation cost over the point-count range of interest: 68 is the
// landmark set, the larger sizes track the growth curve.
static void BM_Delaunay(benchmark::State& state) {
    const auto pts = random_points(int(state.range(0)), 42);
    for (auto _ : state) {
        TriangleMesh mesh = delaunay(pts);
        benchmark::DoNotOptimize(mesh);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Delaunay)->Arg(68)->Arg(256)->Arg(1024)->Arg(4096)->Complexity();

// Cocircular-heavy input (integer grid) forces the exact-arithmetic paths.
static void BM_DelaunayGrid(benchmark::State& state) {
    const int side = int(state.range(0));
    std::vector<Vec2> pts;
    for (int y = 0; y < side; ++y)
        for (int x = 0; x < side; ++x)
            pts.push_back({double(x), double(y)});
    for (auto _ : state) {
        TriangleMesh mesh = delaunay(pts);
        benchmark::DoNotOptimize(mesh);
    }
}
BENCHMARK(BM_DelaunayGrid)->Arg(8)->Arg(16)->Arg(32);

BENCHMARK_MAIN();
