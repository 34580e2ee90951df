#pragma once

#include <vector>

#include "faceflow/mesh.hpp"
#include "faceflow/vec2.hpp"

namespace faceflow {

// Delaunay triangulation by incremental Bowyer-Watson insertion over a
// ghost-vertex hull (no super-triangle coordinates to poison predicates).
//
// Robustness: the orientation and in-circumcircle predicates run in double
// precision behind a forward-error filter; when the floating determinant is
// within the filter bound or within 1e-10 of zero, the sign is recomputed
// exactly (128-bit integers when all operand coordinates are small integers,
// arbitrary-precision rationals otherwise). Exactly cocircular configurations
// are resolved deterministically: the quadrilateral keeps the diagonal that
// contains the lowest vertex index.
//
// The result is deterministic for a fixed input order. Duplicate points are
// kept in the vertex list but only their first occurrence participates in
// triangles. Throws DegenerateInput when fewer than 3 distinct points exist
// or all points are collinear.
TriangleMesh delaunay(const std::vector<Vec2>& points);

} // namespace faceflow
