#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "faceflow/geometry.hpp"
#include "faceflow/mesh.hpp"
#include "faceflow/run_config.hpp"
#include "faceflow/vec2.hpp"

namespace faceflow {

// Interpolates scattered 2-vector samples over the Delaunay triangulation of
// their anchors. The piecewise-cubic method builds a C1 split-triangle
// element per face (each face is divided at its centroid into three cubic
// Bezier patches; cross-edge derivatives are forced to vary linearly along
// every edge, which makes neighboring faces agree to first order). Vertex
// gradients come from a distance-weighted least-squares fit over the Delaunay
// neighborhood. Both methods reproduce affine fields exactly and interpolate
// (never regress) the samples; queries outside the anchors' convex hull
// return nothing.
//
// Duplicate anchors keep the first sample's value; later duplicates are
// never referenced by the triangulation.
//
// Construction throws DegenerateInput when the anchors admit no
// triangulation (fewer than 3 distinct points, or all collinear). Instances
// are immutable after construction and safe to query concurrently.
class ScatteredInterpolator {
public:
    ScatteredInterpolator(std::vector<Vec2> anchors, std::vector<Vec2> values,
                          ResampleMethod method);

    // Value at p, or nullopt strictly outside the convex hull. Point
    // location walks the triangulation from face `hint` (pass the previous
    // result's face for coherent query sequences).
    struct Hit {
        Vec2 value;
        int face = 0; // containing face; reusable as the next hint
    };
    std::optional<Hit> at(Vec2 p, int hint = 0) const;

    // Value on a known face at known barycentric coordinates (the
    // rasterization fast path; skips point location).
    Vec2 eval_on_face(int face, const BarycentricCoords& bc) const;

    const TriangleMesh& mesh() const { return mesh_; }

private:
    // Cubic Bezier ordinates of one face's three-patch split, ordered per
    // the implementation's kC* index constants.
    using ControlNet = std::array<Vec2, 19>;

    ControlNet control_net(int face) const;
    int neighbor_across(int face, int edge_v0, int edge_v1) const;

    TriangleMesh mesh_;
    std::vector<Vec2> values_;
    std::vector<Vec2> grad_u_; // per-vertex gradient of the first component
    std::vector<Vec2> grad_v_; // per-vertex gradient of the second
    std::vector<std::pair<std::uint64_t, int>> edge_owner_; // sorted
    ResampleMethod method_;
};

} // namespace faceflow
