#pragma once

#include <array>
#include <vector>

#include "faceflow/geometry.hpp"
#include "faceflow/vec2.hpp"

namespace faceflow {

// 2D affine transform stored as a 3x3 matrix acting on homogeneous ROW
// vectors: [x' y' 1] = [x y 1] * m. The last column is always (0, 0, 1)^T.
// With this convention the map carrying triangle t_prev onto t_next is
// m = T_prev^{-1} * T_next where T_* stacks the vertices as rows [x y 1].
struct AffineMap2D {
    // m[row][col]
    std::array<std::array<double, 3>, 3> m{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

    static AffineMap2D identity() { return AffineMap2D{}; }
    static AffineMap2D translation(Vec2 t) {
        AffineMap2D a;
        a.m[2][0] = t.x;
        a.m[2][1] = t.y;
        return a;
    }

    Vec2 apply(Vec2 p) const {
        return {p.x * m[0][0] + p.y * m[1][0] + m[2][0],
                p.x * m[0][1] + p.y * m[1][1] + m[2][1]};
    }

    // Determinant of the linear part; zero means the map collapses area.
    double linear_det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
};

// Row-vector composition: applying `first` then `second` is first.m * second.m.
AffineMap2D compose(const AffineMap2D& first, const AffineMap2D& second);

// Inverse map. Throws SingularTriangle when the linear part is singular
// (|det| <= 1e-12), mirroring the degenerate-triangle error family.
AffineMap2D invert(const AffineMap2D& map);

// The unique affine map sending src's vertices onto dst's, in order.
// Throws SingularTriangle when src is degenerate
// (|signed area| <= kDegenerateAreaEps).
AffineMap2D infer_affine(const Triangle& src, const Triangle& dst);

// Maps every point; output has the same length and order as the input.
std::vector<Vec2> apply_affine(const AffineMap2D& map,
                               const std::vector<Vec2>& points);

} // namespace faceflow
