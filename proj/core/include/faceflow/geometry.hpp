#pragma once

#include <array>
#include <vector>

#include "faceflow/errors.hpp"
#include "faceflow/vec2.hpp"

namespace faceflow {

// Geometric triangle given by its three vertex positions.
struct Triangle {
    Vec2 v0, v1, v2;

    // Twice the signed area is the cross product of the edge vectors;
    // positive for counter-clockwise vertex order (y axis pointing down
    // flips the visual sense, but all internal math only needs consistency).
    double signed_area() const { return 0.5 * (v1 - v0).cross(v2 - v0); }
};

// Area threshold below which a triangle is treated as degenerate everywhere
// in this library (affine inference, barycentric solves, rasterization).
inline constexpr double kDegenerateAreaEps = 1e-9; // px^2

// Barycentric coordinates in the convention
//   v = (1 - l1 - l2) * v0 + l1 * v1 + l2 * v2,  l3 = 1 - l1 - l2,
// i.e. l1 weights v1, l2 weights v2 and l3 weights v0 (so v == v0 gives
// (0, 0, 1)). The triple always sums to 1 by construction.
struct BarycentricCoords {
    double l1 = 0.0;
    double l2 = 0.0;
    double l3 = 1.0;

    bool all_in_unit_interval() const {
        return l1 >= 0.0 && l1 <= 1.0 && l2 >= 0.0 && l2 <= 1.0 &&
               l3 >= 0.0 && l3 <= 1.0;
    }
};

// Solves the 2x2 Gram system
//   [e1.e1  e1.e2] [l1]   [ (v - v0).e1 ]
//   [e1.e2  e2.e2] [l2] = [ (v - v0).e2 ],   e1 = v1 - v0, e2 = v2 - v0,
// for the barycentric coordinates of v. Throws SingularTriangle when the
// triangle is degenerate (|area| <= kDegenerateAreaEps).
BarycentricCoords barycentric_solve(Vec2 v, const Triangle& tri);

// True iff v lies in the closed triangle (all barycentric coordinates in
// [0, 1]; the boundary counts as inside).
bool point_in_triangle(Vec2 v, const Triangle& tri);

// Inclusive integer rectangle [x0, x1] x [y0, y1].
struct IntRect {
    int x0 = 0;
    int y0 = 0;
    int x1 = -1;
    int y1 = -1;

    bool empty() const { return x1 < x0 || y1 < y0; }
    bool contains(int x, int y) const {
        return x >= x0 && x <= x1 && y >= y0 && y <= y1;
    }
};

struct RasterSample {
    int x = 0;
    int y = 0;
    BarycentricCoords bc;
};

// Integer points of grid_bounds covered by the closed triangle, each with its
// barycentric coordinates. The scan is restricted to the intersection of the
// triangle's bounding box with grid_bounds, so callers get exactly
// { p integer in grid_bounds : point_in_triangle(p, tri) }.
std::vector<RasterSample> rasterize_interior(const Triangle& tri,
                                             const IntRect& grid_bounds);

} // namespace faceflow
