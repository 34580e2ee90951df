#include "faceflow/flowgen.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "faceflow/affine.hpp"
#include "faceflow/delaunay.hpp"
#include "faceflow/losses.hpp"
#include "faceflow/scattered.hpp"

namespace faceflow {

PropagatedPixelSet rasterize_mesh_interior(const TriangleMesh& mesh,
                                           int height, int width) {
    if (height <= 0 || width <= 0)
        throw DimensionMismatch("rasterize_mesh_interior: empty grid");

    PropagatedPixelSet prop;
    std::vector<char> taken(size_t(height) * size_t(width), 0);
    IntRect grid{0, 0, width - 1, height - 1};
    for (int l = 0; l < (int)mesh.triangles.size(); ++l) {
        for (const RasterSample& s :
             rasterize_interior(mesh.triangle_at(size_t(l)), grid)) {
            char& slot = taken[size_t(s.y) * size_t(width) + size_t(s.x)];
            if (slot) continue; // shared edge: lowest triangle index wins
            slot = 1;
            prop.origin_x.push_back(s.x);
            prop.origin_y.push_back(s.y);
            prop.triangle_id.push_back(l);
            prop.current_positions.push_back(
                Vec2{double(s.x), double(s.y)});
        }
    }
    return prop;
}

std::pair<ScatteredFlowSamples, PropagatedPixelSet> step_flow(
    const PropagatedPixelSet& prop, const TriangleMesh& mesh_prev,
    const TriangleMesh& mesh_next, int* dropped_triangles) {
    if (mesh_prev.triangles != mesh_next.triangles ||
        mesh_prev.vertices.size() != mesh_next.vertices.size())
        throw DimensionMismatch("step_flow: meshes do not share connectivity");

    // Per-triangle maps up front; a triangle degenerate on either side of
    // the step contributes no map and its pixels sit this step out.
    const size_t nt = mesh_prev.triangles.size();
    std::vector<std::optional<AffineMap2D>> maps(nt);
    int dropped = 0;
    for (size_t l = 0; l < nt; ++l) {
        Triangle src = mesh_prev.triangle_at(l);
        Triangle dst = mesh_next.triangle_at(l);
        if (std::abs(src.signed_area()) <= kDegenerateAreaEps ||
            std::abs(dst.signed_area()) <= kDegenerateAreaEps) {
            ++dropped;
            continue;
        }
        maps[l] = infer_affine(src, dst);
    }
    if (dropped_triangles) *dropped_triangles = dropped;

    ScatteredFlowSamples samples;
    samples.anchors.reserve(prop.size());
    samples.vectors.reserve(prop.size());
    PropagatedPixelSet next = prop;
    for (size_t i = 0; i < prop.size(); ++i) {
        const auto& map = maps[size_t(prop.triangle_id[i])];
        if (!map) continue;
        Vec2 cur = prop.current_positions[i];
        Vec2 moved = map->apply(cur);
        samples.anchors.push_back(cur);
        samples.vectors.push_back(moved - cur);
        next.current_positions[i] = moved;
    }
    return {std::move(samples), std::move(next)};
}

FlowField resample_to_grid(const ScatteredFlowSamples& samples, int height,
                           int width, ResampleMethod method) {
    if (samples.anchors.size() != samples.vectors.size())
        throw DimensionMismatch("resample_to_grid: ragged sample lists");

    // Background stays exactly zero: only pixels covered by the anchor
    // triangulation are written.
    FlowField flow(height, width);
    ScatteredInterpolator interp(samples.anchors, samples.vectors, method);
    std::vector<char> taken(size_t(height) * size_t(width), 0);
    IntRect grid{0, 0, width - 1, height - 1};
    const TriangleMesh& mesh = interp.mesh();
    for (int f = 0; f < (int)mesh.triangles.size(); ++f) {
        Triangle tri = mesh.triangle_at(size_t(f));
        if (std::abs(tri.signed_area()) <= kDegenerateAreaEps)
            continue; // sliver: its line of pixels belongs to neighbors
        for (const RasterSample& s : rasterize_interior(tri, grid)) {
            char& slot = taken[size_t(s.y) * size_t(width) + size_t(s.x)];
            if (slot) continue;
            slot = 1;
            flow.set(s.y, s.x, interp.eval_on_face(f, s.bc));
        }
    }
    return flow;
}

std::vector<FlowField> generate_sequence_flow(const Sequence& seq,
                                              const RunConfig& config,
                                              std::vector<StepLog>* log) {
    if (seq.frames.size() < 2)
        throw DegenerateInput("generate_sequence_flow: sequence '" + seq.id +
                              "' has fewer than 2 frames");
    if (seq.height <= 0 || seq.width <= 0)
        throw DimensionMismatch("generate_sequence_flow: sequence '" + seq.id +
                                "' has no image size");
    for (const LandmarkFrame& f : seq.frames)
        if (f.points.size() != seq.frames[0].points.size())
            throw DimensionMismatch(
                "generate_sequence_flow: landmark count varies across '" +
                seq.id + "'");

    // Frame-0 connectivity is reused for the whole sequence; per-step meshes
    // only swap in that frame's vertex positions.
    TriangleMesh mesh0 = delaunay(seq.frames[0].points);
    PropagatedPixelSet prop =
        rasterize_mesh_interior(mesh0, seq.height, seq.width);

    std::vector<FlowField> flows;
    flows.reserve(seq.frames.size() - 1);
    for (size_t k = 1; k < seq.frames.size(); ++k) {
        TriangleMesh prev{seq.frames[k - 1].points, mesh0.triangles};
        TriangleMesh next{seq.frames[k].points, mesh0.triangles};
        int dropped = 0;
        auto [samples, moved] = step_flow(prop, prev, next, &dropped);
        prop = std::move(moved);

        // Anchors that left the image destabilize border interpolation;
        // their pixels stay in the propagation state.
        ScatteredFlowSamples kept;
        kept.anchors.reserve(samples.anchors.size());
        kept.vectors.reserve(samples.vectors.size());
        for (size_t i = 0; i < samples.anchors.size(); ++i) {
            Vec2 a = samples.anchors[i];
            if (a.x >= 0.0 && a.x <= double(seq.width - 1) && a.y >= 0.0 &&
                a.y <= double(seq.height - 1)) {
                kept.anchors.push_back(a);
                kept.vectors.push_back(samples.vectors[i]);
            }
        }
        flows.push_back(resample_to_grid(kept, seq.height, seq.width,
                                         config.resample_method));
        if (log)
            log->push_back(
                StepLog{int(k), int(kept.anchors.size()), dropped});
    }
    return flows;
}

std::pair<ImageF, FlowField> crop_zoom(const ImageF& image,
                                       const FlowField& flow,
                                       const LandmarkFrame& landmarks,
                                       const RunConfig& config, int target_h,
                                       int target_w) {
    if (image.height != flow.height || image.width != flow.width)
        throw DimensionMismatch("crop_zoom: image/flow size mismatch");
    if (landmarks.points.empty())
        throw EmptyCrop("crop_zoom: no landmarks");
    if (target_h <= 0 || target_w <= 0)
        throw DimensionMismatch("crop_zoom: non-positive target size");

    double min_x = landmarks.points[0].x, max_x = min_x;
    double min_y = landmarks.points[0].y, max_y = min_y;
    for (const Vec2& p : landmarks.points) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    // Inclusive box; clamping x0/y0 only from below and x1/y1 only from
    // above keeps a fully off-image box detectably empty.
    const int off = config.crop_offset;
    const int x0 = std::max(0, (int)std::floor(min_x) - off);
    const int y0 = std::max(0, (int)std::floor(min_y) - off);
    const int x1 = std::min(image.width - 1, (int)std::ceil(max_x) + off);
    const int y1 = std::min(image.height - 1, (int)std::ceil(max_y) + off);
    if (x1 < x0 || y1 < y0)
        throw EmptyCrop("crop_zoom: crop box misses the image");

    const int crop_h = y1 - y0 + 1;
    const int crop_w = x1 - x0 + 1;
    ImageF cropped_img(crop_h, crop_w, image.channels);
    FlowField cropped_flow(crop_h, crop_w);
    for (int y = 0; y < crop_h; ++y)
        for (int x = 0; x < crop_w; ++x) {
            for (int c = 0; c < image.channels; ++c)
                cropped_img.at(y, x, c) = image.at(y0 + y, x0 + x, c);
            cropped_flow.set(y, x, flow.at(y0 + y, x0 + x));
        }
    return {resize_image(cropped_img, target_h, target_w),
            resize_flow(cropped_flow, target_h, target_w,
                        /*rescale_components=*/true)};
}

} // namespace faceflow
