#pragma once

#include "faceflow/vec2.hpp"

// Exact-sign geometric predicates used by the Delaunay construction.
// Internal API: exposed as a header only so tests can exercise the filters.
namespace faceflow::detail {

// Sign of (b - a) x (c - a): +1 when the triple (a, b, c) winds
// counter-clockwise (c strictly left of the directed line a->b), -1 when
// clockwise, 0 when exactly collinear. Double-precision evaluation guarded by
// a forward-error filter; filtered cases are recomputed exactly.
int orient2d_sign(Vec2 a, Vec2 b, Vec2 c);

// Sign of the in-circumcircle determinant for the counter-clockwise triangle
// (a, b, c): +1 when d lies strictly inside the circumcircle, -1 strictly
// outside, 0 exactly cocircular. The exact fallback engages when the floating
// determinant is within its forward-error bound or within 1e-10 of zero.
int incircle_sign(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

// True when c lies strictly between a and b on their shared line. Only
// meaningful when orient2d_sign(a, b, c) == 0; uses coordinate comparisons,
// no arithmetic, so it is exact.
bool strictly_between(Vec2 a, Vec2 b, Vec2 c);

} // namespace faceflow::detail
