#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "faceflow/delaunay.hpp"
#include "faceflow/errors.hpp"
#include "faceflow/geometry.hpp"

#include "test_support.hpp"

using namespace faceflow;

namespace {

// Independent hull-size oracle: Andrew's monotone chain with strict turns,
// returning the number of hull vertices.
int convex_hull_size(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Vec2 a, Vec2 b) {
                              return a.x == b.x && a.y == b.y;
                          }),
              pts.end());
    size_t n = pts.size();
    if (n < 3) return int(n);
    std::vector<Vec2> h(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {
        while (k >= 2 &&
               (h[k - 1] - h[k - 2]).cross(pts[i] - h[k - 2]) <= 0)
            --k;
        h[k++] = pts[i];
    }
    for (size_t i = n - 1, t = k + 1; i-- > 0;) {
        while (k >= t && (h[k - 1] - h[k - 2]).cross(pts[i] - h[k - 2]) <= 0)
            --k;
        h[k++] = pts[i];
    }
    return int(k - 1);
}

// Counts distinct undirected edges of a mesh.
size_t edge_count(const TriangleMesh& m) {
    std::set<std::pair<int, int>> edges;
    for (const auto& t : m.triangles)
        for (int e = 0; e < 3; ++e) {
            int a = t[size_t(e)], b = t[size_t((e + 1) % 3)];
            edges.insert({std::min(a, b), std::max(a, b)});
        }
    return edges.size();
}

// Loose empty-circumcircle oracle in plain doubles: no vertex may sit inside
// any triangle's circumcircle by more than a tolerance band.
bool empty_circumcircles(const TriangleMesh& m, double band) {
    for (const auto& t : m.triangles) {
        Vec2 a = m.vertices[size_t(t[0])];
        Vec2 b = m.vertices[size_t(t[1])];
        Vec2 c = m.vertices[size_t(t[2])];
        double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) +
                          c.x * (a.y - b.y));
        if (d == 0.0) continue;
        double a2 = a.x * a.x + a.y * a.y;
        double b2 = b.x * b.x + b.y * b.y;
        double c2 = c.x * c.x + c.y * c.y;
        Vec2 center{(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
                    (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
        double r = (a - center).norm();
        for (size_t v = 0; v < m.vertices.size(); ++v) {
            if (int(v) == t[0] || int(v) == t[1] || int(v) == t[2]) continue;
            if ((m.vertices[v] - center).norm() < r - band) return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("unit square golden: cocircular tie keeps the lowest-index diagonal") {
    TriangleMesh m = delaunay({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    REQUIRE(m.triangles.size() == 2);
    CHECK(m.triangles[0] == std::array<int, 3>{0, 1, 3});
    CHECK(m.triangles[1] == std::array<int, 3>{0, 3, 2});
}

TEST_CASE("triangles are consistently oriented") {
    std::mt19937_64 rng(11);
    for (int run = 0; run < 20; ++run) {
        std::vector<Vec2> pts;
        for (int i = 0; i < 40; ++i)
            pts.push_back({testsup::uniform(rng, 0, 100),
                           testsup::uniform(rng, 0, 100)});
        TriangleMesh m = delaunay(pts);
        for (size_t t = 0; t < m.triangles.size(); ++t)
            CHECK(m.triangle_at(int(t)).signed_area() > 0);
    }
}

TEST_CASE("Euler counts hold on 100 random 68-point sets") {
    std::mt19937_64 rng(22);
    for (int run = 0; run < 100; ++run) {
        std::vector<Vec2> pts;
        for (int i = 0; i < 68; ++i)
            pts.push_back({testsup::uniform(rng, 0, 640),
                           testsup::uniform(rng, 0, 480)});
        TriangleMesh m = delaunay(pts);
        int n = 68;
        int h = convex_hull_size(pts);
        CHECK(int(m.triangles.size()) == 2 * n - 2 - h);
        CHECK(int(edge_count(m)) == 3 * n - 3 - h);
        CHECK(empty_circumcircles(m, 1e-7));
    }
}

TEST_CASE("deterministic for a fixed input order") {
    std::mt19937_64 rng(33);
    std::vector<Vec2> pts;
    for (int i = 0; i < 68; ++i)
        pts.push_back({testsup::uniform(rng, 0, 300),
                       testsup::uniform(rng, 0, 300)});
    TriangleMesh a = delaunay(pts);
    TriangleMesh b = delaunay(pts);
    CHECK(a.triangles == b.triangles);
}

TEST_CASE("fully cocircular integer grid triangulates cleanly") {
    // Every 2x2 cell of an integer grid is exactly cocircular, so this input
    // is all ties; the result must still be a valid full triangulation.
    std::vector<Vec2> pts;
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x) pts.push_back({double(x), double(y)});
    TriangleMesh m = delaunay(pts);
    int n = 16, h = 12;
    CHECK(int(m.triangles.size()) == 2 * n - 2 - h);
    CHECK(int(edge_count(m)) == 3 * n - 3 - h);
    TriangleMesh again = delaunay(pts);
    CHECK(m.triangles == again.triangles);
    // Total area equals the grid square: the triangulation tiles the hull.
    double area = 0.0;
    for (size_t t = 0; t < m.triangles.size(); ++t)
        area += m.triangle_at(int(t)).signed_area();
    CHECK(area == doctest::Approx(9.0).epsilon(1e-12));
}

TEST_CASE("degenerate inputs are rejected") {
    CHECK_THROWS_AS(delaunay({}), DegenerateInput);
    CHECK_THROWS_AS(delaunay({{0, 0}, {1, 1}}), DegenerateInput);
    CHECK_THROWS_AS(delaunay({{0, 0}, {1, 1}, {2, 2}, {3, 3}}),
                    DegenerateInput);
    CHECK_THROWS_AS(delaunay({{5, 5}, {5, 5}, {5, 5}, {5, 5}}),
                    DegenerateInput);
}

TEST_CASE("duplicate points participate once") {
    TriangleMesh m = delaunay({{0, 0}, {10, 0}, {0, 10}, {0, 0}, {10, 0}});
    CHECK(m.vertices.size() == 5); // kept in the vertex list
    REQUIRE(m.triangles.size() == 1);
    for (int i : m.triangles[0]) CHECK(i <= 2); // only first occurrences
}

TEST_CASE("near-degenerate spread still satisfies Euler counts") {
    // Clustered points with tiny jitter exercise the exact-arithmetic
    // fallback paths.
    std::mt19937_64 rng(44);
    std::vector<Vec2> pts;
    for (int i = 0; i < 50; ++i) {
        double base = i % 7;
        pts.push_back({base + testsup::uniform(rng, -1e-9, 1e-9),
                       double(i / 7) + testsup::uniform(rng, -1e-9, 1e-9)});
    }
    TriangleMesh m = delaunay(pts);
    int h = convex_hull_size(pts);
    CHECK(int(m.triangles.size()) == 2 * 50 - 2 - h);
    CHECK(int(edge_count(m)) == 3 * 50 - 3 - h);
}
