#include "faceflow/affine.hpp"

#include <cmath>

namespace faceflow {

AffineMap2D compose(const AffineMap2D& first, const AffineMap2D& second) {
    AffineMap2D out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += first.m[r][k] * second.m[k][c];
            out.m[r][c] = s;
        }
    return out;
}

AffineMap2D invert(const AffineMap2D& map) {
    const double det = map.linear_det();
    if (std::abs(det) <= 1e-12)
        throw SingularTriangle("invert: affine map has singular linear part");
    AffineMap2D inv;
    inv.m[0][0] = map.m[1][1] / det;
    inv.m[0][1] = -map.m[0][1] / det;
    inv.m[1][0] = -map.m[1][0] / det;
    inv.m[1][1] = map.m[0][0] / det;
    // Row-vector convention: p' = p * L + t, so t_inv = -t * L_inv.
    inv.m[2][0] = -(map.m[2][0] * inv.m[0][0] + map.m[2][1] * inv.m[1][0]);
    inv.m[2][1] = -(map.m[2][0] * inv.m[0][1] + map.m[2][1] * inv.m[1][1]);
    return inv;
}

AffineMap2D infer_affine(const Triangle& src, const Triangle& dst) {
    // Solve on edge vectors rather than inverting the homogeneous vertex
    // matrix directly: identical result, but conditioning does not degrade
    // with the distance of the triangle from the origin.
    const Vec2 s1 = src.v1 - src.v0;
    const Vec2 s2 = src.v2 - src.v0;
    const double det = s1.cross(s2); // = 2 * signed area
    if (std::abs(det) <= 2.0 * kDegenerateAreaEps)
        throw SingularTriangle("infer_affine: degenerate source triangle");

    const Vec2 d1 = dst.v1 - dst.v0;
    const Vec2 d2 = dst.v2 - dst.v0;

    // Linear part L (row-vector convention: e_src * L = e_dst):
    //   [s1] * L = [d1]   =>   L = [s1; s2]^{-1} * [d1; d2]
    //   [s2]       [d2]
    AffineMap2D a;
    a.m[0][0] = (s2.y * d1.x - s1.y * d2.x) / det;
    a.m[0][1] = (s2.y * d1.y - s1.y * d2.y) / det;
    a.m[1][0] = (s1.x * d2.x - s2.x * d1.x) / det;
    a.m[1][1] = (s1.x * d2.y - s2.x * d1.y) / det;
    // Translation: v0_src * L + t = v0_dst.
    a.m[2][0] = dst.v0.x - (src.v0.x * a.m[0][0] + src.v0.y * a.m[1][0]);
    a.m[2][1] = dst.v0.y - (src.v0.x * a.m[0][1] + src.v0.y * a.m[1][1]);
    return a;
}

std::vector<Vec2> apply_affine(const AffineMap2D& map,
                               const std::vector<Vec2>& points) {
    std::vector<Vec2> out;
    out.reserve(points.size());
    for (Vec2 p : points) out.push_back(map.apply(p));
    return out;
}

} // namespace faceflow
