#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "faceflow/geometry.hpp"
#include "faceflow/vec2.hpp"

namespace faceflow {

// Shared-connectivity triangle mesh: vertex positions plus index triples.
// The triangle list is canonicalized (each triple rotated so its smallest
// index comes first, triples sorted lexicographically) so meshes compare
// deterministically in golden tests.
struct TriangleMesh {
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> triangles;

    Triangle triangle_at(int t) const {
        const auto& idx = triangles[t];
        return {vertices[idx[0]], vertices[idx[1]], vertices[idx[2]]};
    }
};

// Rotates each triple so the smallest vertex index is first (preserving
// cyclic orientation) and sorts the triangle list; vertex order is untouched.
void canonicalize(TriangleMesh& mesh);

// OFF-style debug dump: "OFF", then "<nv> <nt> 0", then one "x y 0" line per
// vertex and one "3 i j k" line per triangle.
void write_off(const TriangleMesh& mesh, std::ostream& out);
std::string to_off(const TriangleMesh& mesh);

} // namespace faceflow
