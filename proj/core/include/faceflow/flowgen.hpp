#pragma once

#include <utility>
#include <vector>

#include "faceflow/flow_field.hpp"
#include "faceflow/image.hpp"
#include "faceflow/landmarks.hpp"
#include "faceflow/mesh.hpp"
#include "faceflow/run_config.hpp"

namespace faceflow {

// Interior pixels of the first frame carried through the sequence. Parallel
// lists: pixel (origin_x, origin_y) was rasterized inside triangle
// triangle_id and currently sits at current_positions[i]. Positions are all
// the state the chain needs, so resampling never feeds error back into
// propagation.
struct PropagatedPixelSet {
    std::vector<int> origin_x;
    std::vector<int> origin_y;
    std::vector<int> triangle_id;
    std::vector<Vec2> current_positions;

    size_t size() const { return current_positions.size(); }
};

// Displacement samples anchored at (generally non-integer) positions of the
// earlier frame of a pair.
struct ScatteredFlowSamples {
    std::vector<Vec2> anchors;
    std::vector<Vec2> vectors;
};

// Per-step generation diagnostics (the CLI log line).
struct StepLog {
    int step = 0;              // k of the (k-1, k) frame pair
    int anchors = 0;           // samples fed to resampling
    int dropped_triangles = 0; // degenerate this step; their pixels skipped
};

// Partitions the grid's triangle-covered pixels: each pixel goes to the
// lowest-index triangle whose closure contains it, so shared edges never
// double-assign. Positions start at the pixel centers.
PropagatedPixelSet rasterize_mesh_interior(const TriangleMesh& mesh,
                                           int height, int width);

// One propagation step: per triangle, the affine map sending mesh_prev's
// triangle to mesh_next's is applied to the pixels it owns. Sample vectors
// are map(position) - position, anchored at the pre-step positions. A
// triangle degenerate in either frame (area <= the library threshold) is
// dropped for this step: its pixels emit no samples and keep their
// positions. Meshes must share connectivity; only vertex positions differ.
std::pair<ScatteredFlowSamples, PropagatedPixelSet> step_flow(
    const PropagatedPixelSet& prop, const TriangleMesh& mesh_prev,
    const TriangleMesh& mesh_next, int* dropped_triangles = nullptr);

// Scattered displacement samples onto the integer grid: piecewise-cubic (or
// piecewise-linear) interpolation inside the anchors' convex hull, exact at
// anchors, exactly (0,0) outside the hull (stationary background).
FlowField resample_to_grid(const ScatteredFlowSamples& samples, int height,
                           int width, ResampleMethod method);

// The full pipeline for one sequence: triangulate frame 0, rasterize its
// triangle interiors once, then per consecutive frame pair propagate, filter
// anchors that left the image, and resample. Returns one field per pair,
// anchored on the earlier frame's grid. Optional per-step diagnostics land
// in `log`.
std::vector<FlowField> generate_sequence_flow(const Sequence& seq,
                                              const RunConfig& config,
                                              std::vector<StepLog>* log =
                                                  nullptr);

// Face crop for training: the landmark bounding box grown by
// config.crop_offset, clamped to the image, then bilinearly resized to the
// target. Flow components are rescaled into the resized frame's pixel units
// (u by target_w / crop_w, v by target_h / crop_h).
std::pair<ImageF, FlowField> crop_zoom(const ImageF& image,
                                       const FlowField& flow,
                                       const LandmarkFrame& landmarks,
                                       const RunConfig& config, int target_h,
                                       int target_w);

} // namespace faceflow
