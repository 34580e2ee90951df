#include <cmath>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "faceflow/flowgen.hpp"

using namespace faceflow;

namespace {

// A short synthetic clip: 68 landmarks drifting under a gentle global
// rotation + translation, sized so the face fills most of the frame.
Sequence synthetic_sequence(int h, int w, int frames) {
    std::mt19937_64 rng(11);
    const Vec2 c{w / 2.0, h / 2.0};
    const double rx = 0.42 * w, ry = 0.42 * h;
    std::uniform_real_distribution<double> dx(c.x - rx, c.x + rx);
    std::uniform_real_distribution<double> dy(c.y - ry, c.y + ry);
    std::vector<Vec2> base;
    while (base.size() < size_t(kLandmarkCount)) {
        Vec2 p{dx(rng), dy(rng)};
        double nx = (p.x - c.x) / rx, ny = (p.y - c.y) / ry;
        if (nx * nx + ny * ny <= 1.0) base.push_back(p);
    }
    Sequence seq;
    seq.id = "bench";
    seq.height = h;
    seq.width = w;
    for (int k = 0; k < frames; ++k) {
        const double th = 0.002 * k;
        LandmarkFrame f;
        f.frame_index = k;
        for (Vec2 p : base) {
            Vec2 d = p - c;
            f.points.push_back({c.x + std::cos(th) * d.x -
                                    std::sin(th) * d.y + 0.5 * k,
                                c.y + std::sin(th) * d.x +
                                    std::cos(th) * d.y + 0.3 * k});
        }
        seq.frames.push_back(std::move(f));
    }
    return seq;
}

} // namespace

// End-to-end ground-truth generation for one sequence (triangulate,
// rasterize, propagate, resample every frame pair).
static void BM_GenerateSequence(benchmark::State& state) {
    const int side = int(state.range(0));
    const Sequence seq = synthetic_sequence(side, side, 5);
    for (auto _ : state) {
        std::vector<FlowField> flows = generate_sequence_flow(seq, RunConfig{});
        benchmark::DoNotOptimize(flows);
    }
    state.SetItemsProcessed(int64_t(state.iterations()) * 4 * side * side);
}
BENCHMARK(BM_GenerateSequence)->Arg(128)->Arg(256)->Arg(384);

BENCHMARK_MAIN();
