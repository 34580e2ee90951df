#include "faceflow/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace faceflow {

BarycentricCoords barycentric_solve(Vec2 v, const Triangle& tri) {
    const Vec2 e1 = tri.v1 - tri.v0;
    const Vec2 e2 = tri.v2 - tri.v0;
    // det of the Gram matrix equals |e1 x e2|^2 = (2 * area)^2; gate on the
    // area itself so the degeneracy threshold matches the rest of the library.
    const double twice_area = e1.cross(e2);
    if (std::abs(twice_area) <= 2.0 * kDegenerateAreaEps)
        throw SingularTriangle("barycentric_solve: degenerate triangle");

    const Vec2 d = v - tri.v0;
    const double g11 = e1.dot(e1);
    const double g12 = e1.dot(e2);
    const double g22 = e2.dot(e2);
    const double b1 = d.dot(e1);
    const double b2 = d.dot(e2);
    const double det = g11 * g22 - g12 * g12;

    BarycentricCoords bc;
    bc.l1 = (b1 * g22 - b2 * g12) / det;
    bc.l2 = (g11 * b2 - g12 * b1) / det;
    bc.l3 = 1.0 - bc.l1 - bc.l2;
    return bc;
}

bool point_in_triangle(Vec2 v, const Triangle& tri) {
    return barycentric_solve(v, tri).all_in_unit_interval();
}

std::vector<RasterSample> rasterize_interior(const Triangle& tri,
                                             const IntRect& grid_bounds) {
    if (std::abs(tri.signed_area()) <= kDegenerateAreaEps)
        throw SingularTriangle("rasterize_interior: degenerate triangle");

    const double min_x = std::min({tri.v0.x, tri.v1.x, tri.v2.x});
    const double max_x = std::max({tri.v0.x, tri.v1.x, tri.v2.x});
    const double min_y = std::min({tri.v0.y, tri.v1.y, tri.v2.y});
    const double max_y = std::max({tri.v0.y, tri.v1.y, tri.v2.y});

    const int x0 = std::max(grid_bounds.x0, (int)std::ceil(min_x));
    const int x1 = std::min(grid_bounds.x1, (int)std::floor(max_x));
    const int y0 = std::max(grid_bounds.y0, (int)std::ceil(min_y));
    const int y1 = std::min(grid_bounds.y1, (int)std::floor(max_y));

    std::vector<RasterSample> out;
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            BarycentricCoords bc =
                barycentric_solve(Vec2((double)x, (double)y), tri);
            if (bc.all_in_unit_interval())
                out.push_back(RasterSample{x, y, bc});
        }
    }
    return out;
}

} // namespace faceflow
