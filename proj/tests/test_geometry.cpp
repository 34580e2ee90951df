#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "faceflow/affine.hpp"
#include "faceflow/geometry.hpp"
#include "faceflow/mesh.hpp"

#include "test_support.hpp"

using namespace faceflow;

namespace {

// Independent membership oracle: the point is inside the closed triangle iff
// it is on the same side of (or on) all three edges.
bool half_plane_inside(Vec2 p, const Triangle& t) {
    double d0 = (t.v1 - t.v0).cross(p - t.v0);
    double d1 = (t.v2 - t.v1).cross(p - t.v1);
    double d2 = (t.v0 - t.v2).cross(p - t.v2);
    bool has_neg = d0 < 0 || d1 < 0 || d2 < 0;
    bool has_pos = d0 > 0 || d1 > 0 || d2 > 0;
    return !(has_neg && has_pos);
}

// Distance from p to the nearest edge line, for excluding the boundary band.
double edge_band_distance(Vec2 p, const Triangle& t) {
    auto line_dist = [&](Vec2 a, Vec2 b) {
        Vec2 e = b - a;
        return std::abs(e.cross(p - a)) / e.norm();
    };
    return std::min({line_dist(t.v0, t.v1), line_dist(t.v1, t.v2),
                     line_dist(t.v2, t.v0)});
}

// Extreme slivers are rejected: near the area floor the 2x2 solve is so
// ill-conditioned that no fixed tolerance is meaningful (the library's own
// degenerate cutoff is the separate kDegenerateAreaEps contract).
Triangle random_triangle(std::mt19937_64& rng, double span) {
    for (;;) {
        Triangle t{{testsup::uniform(rng, 0, span), testsup::uniform(rng, 0, span)},
                   {testsup::uniform(rng, 0, span), testsup::uniform(rng, 0, span)},
                   {testsup::uniform(rng, 0, span), testsup::uniform(rng, 0, span)}};
        if (std::abs(t.signed_area()) > 50.0) return t;
    }
}

} // namespace

TEST_CASE("barycentric vertex goldens and sum") {
    Triangle t{{1, 2}, {7, 3}, {4, 9}};
    BarycentricCoords b0 = barycentric_solve(t.v0, t);
    CHECK(b0.l1 == doctest::Approx(0).epsilon(1e-12));
    CHECK(b0.l2 == doctest::Approx(0).epsilon(1e-12));
    CHECK(b0.l3 == doctest::Approx(1).epsilon(1e-12));
    BarycentricCoords b1 = barycentric_solve(t.v1, t);
    CHECK(b1.l1 == doctest::Approx(1).epsilon(1e-12));
    BarycentricCoords b2 = barycentric_solve(t.v2, t);
    CHECK(b2.l2 == doctest::Approx(1).epsilon(1e-12));
    CHECK(b0.l1 + b0.l2 + b0.l3 == doctest::Approx(1).epsilon(1e-15));
}

TEST_CASE("barycentric reconstruction within 1e-9") {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 500; ++i) {
        Triangle t = random_triangle(rng, 100);
        Vec2 p{testsup::uniform(rng, -20, 120), testsup::uniform(rng, -20, 120)};
        BarycentricCoords b = barycentric_solve(p, t);
        Vec2 r = t.v0 * b.l3 + t.v1 * b.l1 + t.v2 * b.l2;
        CHECK((r - p).norm() <= 1e-9);
    }
}

TEST_CASE("degenerate triangle rejected") {
    Triangle flat{{0, 0}, {1, 1}, {2, 2}};
    CHECK_THROWS_AS(barycentric_solve({1, 0}, flat), SingularTriangle);
}

TEST_CASE("point_in_triangle agrees with the half-plane oracle") {
    std::mt19937_64 rng(202);
    int checked = 0;
    while (checked < 10000) {
        Triangle t = random_triangle(rng, 50);
        Vec2 p{testsup::uniform(rng, -10, 60), testsup::uniform(rng, -10, 60)};
        if (edge_band_distance(p, t) < 1e-7) continue; // off the boundary band
        CHECK(point_in_triangle(p, t) == half_plane_inside(p, t));
        ++checked;
    }
}

TEST_CASE("point_in_triangle includes the boundary") {
    Triangle t{{0, 0}, {10, 0}, {0, 10}};
    CHECK(point_in_triangle({5, 0}, t));
    CHECK(point_in_triangle({0, 0}, t));
    CHECK(point_in_triangle({5, 5}, t)); // hypotenuse midpoint
    CHECK(!point_in_triangle({5.1, 5.1}, t));
}

TEST_CASE("barycentric invariance under affine maps within 1e-7") {
    std::mt19937_64 rng(303);
    for (int i = 0; i < 300; ++i) {
        Triangle t = random_triangle(rng, 40);
        Vec2 p{testsup::uniform(rng, 0, 40), testsup::uniform(rng, 0, 40)};
        // Random well-conditioned affine: rotation + mild scale + shear.
        double ang = testsup::uniform(rng, 0, 6.28);
        double sx = testsup::uniform(rng, 0.5, 2.0);
        double sy = testsup::uniform(rng, 0.5, 2.0);
        double sh = testsup::uniform(rng, -0.5, 0.5);
        AffineMap2D m;
        m.m[0][0] = sx * std::cos(ang);
        m.m[0][1] = sx * std::sin(ang);
        m.m[1][0] = sh - sy * std::sin(ang);
        m.m[1][1] = sy * std::cos(ang);
        m.m[2][0] = testsup::uniform(rng, -30, 30);
        m.m[2][1] = testsup::uniform(rng, -30, 30);
        Triangle tm{m.apply(t.v0), m.apply(t.v1), m.apply(t.v2)};
        if (std::abs(tm.signed_area()) <= 1.0) continue;
        BarycentricCoords a = barycentric_solve(p, t);
        BarycentricCoords b = barycentric_solve(m.apply(p), tm);
        CHECK(std::abs(a.l1 - b.l1) <= 1e-7);
        CHECK(std::abs(a.l2 - b.l2) <= 1e-7);
        CHECK(std::abs(a.l3 - b.l3) <= 1e-7);
    }
}

TEST_CASE("infer_affine maps vertices within 1e-9 and round-trips") {
    std::mt19937_64 rng(404);
    for (int i = 0; i < 300; ++i) {
        Triangle src = random_triangle(rng, 60);
        Triangle dst = random_triangle(rng, 60);
        AffineMap2D m = infer_affine(src, dst);
        CHECK((m.apply(src.v0) - dst.v0).norm() <= 1e-9);
        CHECK((m.apply(src.v1) - dst.v1).norm() <= 1e-9);
        CHECK((m.apply(src.v2) - dst.v2).norm() <= 1e-9);
        // Inverse sends them back.
        AffineMap2D inv = invert(m);
        CHECK((inv.apply(dst.v0) - src.v0).norm() <= 1e-7);
        // Composition with the inverse is the identity on a probe point.
        Vec2 p{testsup::uniform(rng, 0, 60), testsup::uniform(rng, 0, 60)};
        CHECK((compose(m, inv).apply(p) - p).norm() <= 1e-7);
    }
}

TEST_CASE("infer_affine rejects a degenerate source") {
    Triangle flat{{0, 0}, {5, 5}, {10, 10}};
    Triangle ok{{0, 0}, {1, 0}, {0, 1}};
    CHECK_THROWS_AS(infer_affine(flat, ok), SingularTriangle);
}

TEST_CASE("affine identity and translation helpers") {
    Vec2 p{3.5, -2.25};
    CHECK((AffineMap2D::identity().apply(p) - p).norm() == 0.0);
    AffineMap2D t = AffineMap2D::translation({2, -1});
    CHECK(t.apply(p).x == doctest::Approx(5.5));
    CHECK(t.apply(p).y == doctest::Approx(-3.25));
    CHECK(t.linear_det() == doctest::Approx(1.0));
}

TEST_CASE("rasterize_interior golden on an axis right triangle") {
    // Closed triangle (0,0)-(4,0)-(0,4): integer points with x,y >= 0 and
    // x + y <= 4, i.e. 15 samples.
    Triangle t{{0, 0}, {4, 0}, {0, 4}};
    IntRect grid{0, 0, 10, 10};
    auto samples = rasterize_interior(t, grid);
    CHECK(samples.size() == 15);
    for (const RasterSample& s : samples) {
        CHECK(s.x + s.y <= 4);
        CHECK(s.bc.all_in_unit_interval());
        // Barycentric coordinates must reproduce the pixel position.
        Vec2 r = t.v0 * s.bc.l3 + t.v1 * s.bc.l1 + t.v2 * s.bc.l2;
        CHECK((r - Vec2{double(s.x), double(s.y)}).norm() <= 1e-12);
    }
}

TEST_CASE("rasterize_interior respects grid clipping") {
    Triangle t{{-5, -5}, {15, -5}, {-5, 15}};
    IntRect grid{0, 0, 3, 3};
    auto samples = rasterize_interior(t, grid);
    int count = 0;
    for (int y = 0; y <= 3; ++y)
        for (int x = 0; x <= 3; ++x)
            if (point_in_triangle({double(x), double(y)}, t)) ++count;
    CHECK(int(samples.size()) == count);
}

TEST_CASE("IntRect basics") {
    IntRect r{2, 3, 5, 7};
    CHECK(!r.empty());
    CHECK(r.contains(2, 3));
    CHECK(r.contains(5, 7));
    CHECK(!r.contains(6, 7));
    CHECK(IntRect{}.empty());
}

TEST_CASE("mesh canonicalization sorts rotated triples") {
    TriangleMesh m;
    m.vertices = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    m.triangles = {{3, 0, 1}, {2, 3, 0}};
    canonicalize(m);
    CHECK(m.triangles[0] == std::array<int, 3>{0, 1, 3});
    CHECK(m.triangles[1] == std::array<int, 3>{0, 2, 3});
}
