#include "faceflow/scattered.hpp"

#include <algorithm>
#include <cmath>

#include "faceflow/delaunay.hpp"
#include "faceflow/detail/predicates.hpp"
#include "faceflow/errors.hpp"

namespace faceflow {

namespace {

// Control-net slots. Index digits count the weight of (V1, V2, V3, centroid)
// in the node position, e.g. kC2100 sits at (2*V1 + V2) / 3; digits sum to 3.
enum : int {
    kC3000 = 0,  // value at V1
    kC0300 = 1,  // value at V2
    kC0030 = 2,  // value at V3
    kC2100 = 3,  // V1's tangent ordinate toward V2
    kC1200 = 4,  // V2's tangent ordinate toward V1
    kC0210 = 5,  // V2's tangent ordinate toward V3
    kC0120 = 6,  // V3's tangent ordinate toward V2
    kC1020 = 7,  // V3's tangent ordinate toward V1
    kC2010 = 8,  // V1's tangent ordinate toward V3
    kC2001 = 9,  // corner ring at V1
    kC0201 = 10, // corner ring at V2
    kC0021 = 11, // corner ring at V3
    kC1101 = 12, // cross-edge ordinate of edge V1V2
    kC0111 = 13, // cross-edge ordinate of edge V2V3
    kC1011 = 14, // cross-edge ordinate of edge V3V1
    kC1002 = 15, // inner ring toward V1
    kC0102 = 16, // inner ring toward V2
    kC0012 = 17, // inner ring toward V3
    kC0003 = 18  // value at the centroid
};

inline Vec2 perp(Vec2 d) { return {-d.y, d.x}; }

inline std::uint64_t edge_key(int a, int b) {
    return (std::uint64_t(std::uint32_t(a)) << 32) | std::uint32_t(b);
}

// Cubic Bernstein evaluation on one mini patch. q holds the ordinates in the
// order (300, 030, 003, 210, 120, 201, 102, 021, 012, 111) over the patch's
// own barycentric coordinates (a1, a2, a4).
Vec2 eval_patch(const std::array<Vec2, 10>& q, double a1, double a2,
                double a4) {
    return a1 * a1 * a1 * q[0] + a2 * a2 * a2 * q[1] + a4 * a4 * a4 * q[2] +
           3.0 * a1 * a1 * a2 * q[3] + 3.0 * a1 * a2 * a2 * q[4] +
           3.0 * a1 * a1 * a4 * q[5] + 3.0 * a1 * a4 * a4 * q[6] +
           3.0 * a2 * a2 * a4 * q[7] + 3.0 * a2 * a4 * a4 * q[8] +
           6.0 * a1 * a2 * a4 * q[9];
}

// The cross-edge ordinate that makes the derivative transversal to an outer
// edge vary linearly along it. Neighboring faces impose the same condition
// with the same transversal direction (the edge normal), so their gradients
// agree along the shared edge. Arguments: the edge's corner/tangent/ring
// ordinates plus the direction coefficients d1, d2, d4 = grad(a_m) . w for
// the mini patch (edge start, edge end, centroid) and edge normal w. d4 is
// never 0: grad(a4) is itself normal to the edge.
Vec2 cross_edge_ordinate(Vec2 c_start, Vec2 c_tan_fwd, Vec2 c_tan_bwd,
                         Vec2 c_end, Vec2 c_ring_start, Vec2 c_ring_end,
                         double d1, double d2, double d4) {
    return (1.0 / (2.0 * d4)) *
           (d1 * (c_start + c_tan_bwd - 2.0 * c_tan_fwd) +
            d2 * (c_tan_fwd + c_end - 2.0 * c_tan_bwd) +
            d4 * (c_ring_start + c_ring_end));
}

} // namespace

ScatteredInterpolator::ScatteredInterpolator(std::vector<Vec2> anchors,
                                             std::vector<Vec2> values,
                                             ResampleMethod method)
    : values_(std::move(values)), method_(method) {
    if (anchors.size() != values_.size())
        throw DimensionMismatch("scattered: anchor/value count mismatch");
    mesh_ = delaunay(anchors);

    edge_owner_.reserve(mesh_.triangles.size() * 3);
    for (int f = 0; f < (int)mesh_.triangles.size(); ++f) {
        const auto& t = mesh_.triangles[size_t(f)];
        edge_owner_.emplace_back(edge_key(t[0], t[1]), f);
        edge_owner_.emplace_back(edge_key(t[1], t[2]), f);
        edge_owner_.emplace_back(edge_key(t[2], t[0]), f);
    }
    std::sort(edge_owner_.begin(), edge_owner_.end());

    if (method_ == ResampleMethod::kPiecewiseLinear) return;

    // Vertex gradients per component from weighted least squares over the
    // Delaunay neighborhood: minimize sum of w_j (f_j - f_i - g . d_j)^2
    // with w_j = 1 / |d_j|^2. Falls back to the 2-ring, then to uniform
    // weights, then to a zero gradient when the neighborhood is collinear.
    const size_t n = mesh_.vertices.size();
    std::vector<std::vector<int>> ring(n);
    for (const auto& t : mesh_.triangles)
        for (int e = 0; e < 3; ++e) {
            ring[size_t(t[size_t(e)])].push_back(t[size_t((e + 1) % 3)]);
            ring[size_t(t[size_t(e)])].push_back(t[size_t((e + 2) % 3)]);
        }
    for (auto& r : ring) {
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
    }

    grad_u_.assign(n, Vec2{});
    grad_v_.assign(n, Vec2{});
    auto fit = [&](int i, const std::vector<int>& nbrs, bool weighted,
                   Vec2& gu, Vec2& gv) {
        double a11 = 0.0, a12 = 0.0, a22 = 0.0;
        Vec2 bu{}, bv{};
        for (int j : nbrs) {
            Vec2 d = mesh_.vertices[size_t(j)] - mesh_.vertices[size_t(i)];
            double w = weighted ? 1.0 / std::max(d.norm2(), 1e-300) : 1.0;
            a11 += w * d.x * d.x;
            a12 += w * d.x * d.y;
            a22 += w * d.y * d.y;
            Vec2 df = values_[size_t(j)] - values_[size_t(i)];
            bu = bu + (w * df.x) * d;
            bv = bv + (w * df.y) * d;
        }
        double det = a11 * a22 - a12 * a12;
        if (!(det > 1e-10 * a11 * a22)) return false; // collinear directions
        gu = {(bu.x * a22 - bu.y * a12) / det, (a11 * bu.y - a12 * bu.x) / det};
        gv = {(bv.x * a22 - bv.y * a12) / det, (a11 * bv.y - a12 * bv.x) / det};
        return true;
    };

    std::vector<int> wide;
    for (size_t i = 0; i < n; ++i) {
        if (ring[i].empty()) continue; // duplicate anchor, never referenced
        if (fit(int(i), ring[i], true, grad_u_[i], grad_v_[i])) continue;
        wide.clear();
        for (int j : ring[i])
            wide.insert(wide.end(), ring[size_t(j)].begin(),
                        ring[size_t(j)].end());
        std::sort(wide.begin(), wide.end());
        wide.erase(std::unique(wide.begin(), wide.end()), wide.end());
        wide.erase(std::remove(wide.begin(), wide.end(), int(i)), wide.end());
        if (fit(int(i), wide, true, grad_u_[i], grad_v_[i])) continue;
        if (fit(int(i), wide, false, grad_u_[i], grad_v_[i])) continue;
        // Leave the zero gradient: the surface stays C0 and interpolating.
    }
}

int ScatteredInterpolator::neighbor_across(int face, int edge_v0,
                                           int edge_v1) const {
    const std::uint64_t key = edge_key(edge_v1, edge_v0); // reversed edge
    auto it = std::lower_bound(edge_owner_.begin(), edge_owner_.end(),
                               std::make_pair(key, -1));
    if (it != edge_owner_.end() && it->first == key && it->second != face)
        return it->second;
    return -1;
}

ScatteredInterpolator::ControlNet ScatteredInterpolator::control_net(
    int face) const {
    const auto& t = mesh_.triangles[size_t(face)];
    const Vec2 p1 = mesh_.vertices[size_t(t[0])];
    const Vec2 p2 = mesh_.vertices[size_t(t[1])];
    const Vec2 p3 = mesh_.vertices[size_t(t[2])];
    const Vec2 p4 = (1.0 / 3.0) * (p1 + p2 + p3);

    // Directional derivative of both components at vertex t[i] along dir.
    auto deriv = [&](int i, Vec2 dir) -> Vec2 {
        return {grad_u_[size_t(t[size_t(i)])].dot(dir),
                grad_v_[size_t(t[size_t(i)])].dot(dir)};
    };

    ControlNet c;
    c[kC3000] = values_[size_t(t[0])];
    c[kC0300] = values_[size_t(t[1])];
    c[kC0030] = values_[size_t(t[2])];
    c[kC2100] = c[kC3000] + (1.0 / 3.0) * deriv(0, p2 - p1);
    c[kC2010] = c[kC3000] + (1.0 / 3.0) * deriv(0, p3 - p1);
    c[kC1200] = c[kC0300] + (1.0 / 3.0) * deriv(1, p1 - p2);
    c[kC0210] = c[kC0300] + (1.0 / 3.0) * deriv(1, p3 - p2);
    c[kC0120] = c[kC0030] + (1.0 / 3.0) * deriv(2, p2 - p3);
    c[kC1020] = c[kC0030] + (1.0 / 3.0) * deriv(2, p1 - p3);
    c[kC2001] = (1.0 / 3.0) * (c[kC3000] + c[kC2100] + c[kC2010]);
    c[kC0201] = (1.0 / 3.0) * (c[kC0300] + c[kC1200] + c[kC0210]);
    c[kC0021] = (1.0 / 3.0) * (c[kC0030] + c[kC1020] + c[kC0120]);

    // Cross-edge ordinates; w is the edge normal, the d coefficients are the
    // (unnormalized) barycentric gradients of the mini patch dotted with w.
    // Common positive factors cancel inside cross_edge_ordinate.
    auto cross_mid = [&](Vec2 start, Vec2 end, Vec2 c_start, Vec2 c_tan_fwd,
                         Vec2 c_tan_bwd, Vec2 c_end, Vec2 c_ring_start,
                         Vec2 c_ring_end) -> Vec2 {
        const Vec2 w = perp(end - start);
        const double d1 = perp(p4 - end).dot(w);
        const double d2 = perp(start - p4).dot(w);
        const double d4 = perp(end - start).dot(w); // = |edge|^2 > 0
        return cross_edge_ordinate(c_start, c_tan_fwd, c_tan_bwd, c_end,
                                   c_ring_start, c_ring_end, d1, d2, d4);
    };
    c[kC1101] = cross_mid(p1, p2, c[kC3000], c[kC2100], c[kC1200], c[kC0300],
                          c[kC2001], c[kC0201]);
    c[kC0111] = cross_mid(p2, p3, c[kC0300], c[kC0210], c[kC0120], c[kC0030],
                          c[kC0201], c[kC0021]);
    c[kC1011] = cross_mid(p3, p1, c[kC0030], c[kC1020], c[kC2010], c[kC3000],
                          c[kC0021], c[kC2001]);

    c[kC1002] = (1.0 / 3.0) * (c[kC2001] + c[kC1101] + c[kC1011]);
    c[kC0102] = (1.0 / 3.0) * (c[kC1101] + c[kC0201] + c[kC0111]);
    c[kC0012] = (1.0 / 3.0) * (c[kC1011] + c[kC0111] + c[kC0021]);
    c[kC0003] = (1.0 / 3.0) * (c[kC1002] + c[kC0102] + c[kC0012]);
    return c;
}

Vec2 ScatteredInterpolator::eval_on_face(int face,
                                         const BarycentricCoords& bc) const {
    const auto& t = mesh_.triangles[size_t(face)];
    // bc weights v1/v2/v0; the face's own corner order is (b1, b2, b3).
    const double b1 = bc.l3;
    const double b2 = bc.l1;
    const double b3 = bc.l2;
    if (method_ == ResampleMethod::kPiecewiseLinear)
        return b1 * values_[size_t(t[0])] + b2 * values_[size_t(t[1])] +
               b3 * values_[size_t(t[2])];

    const ControlNet c = control_net(face);
    // The face splits at the centroid into three patches; the query belongs
    // to the one opposite its smallest coordinate (ties pick the first, and
    // the patches agree on their seams).
    if (b3 <= b1 && b3 <= b2)
        return eval_patch({c[kC3000], c[kC0300], c[kC0003], c[kC2100],
                           c[kC1200], c[kC2001], c[kC1002], c[kC0201],
                           c[kC0102], c[kC1101]},
                          b1 - b3, b2 - b3, 3.0 * b3);
    if (b1 <= b2)
        return eval_patch({c[kC0300], c[kC0030], c[kC0003], c[kC0210],
                           c[kC0120], c[kC0201], c[kC0102], c[kC0021],
                           c[kC0012], c[kC0111]},
                          b2 - b1, b3 - b1, 3.0 * b1);
    return eval_patch({c[kC0030], c[kC3000], c[kC0003], c[kC1020], c[kC2010],
                       c[kC0021], c[kC0012], c[kC2001], c[kC1002],
                       c[kC1011]},
                      b3 - b2, b1 - b2, 3.0 * b2);
}

std::optional<ScatteredInterpolator::Hit> ScatteredInterpolator::at(
    Vec2 p, int hint) const {
    const int nt = (int)mesh_.triangles.size();
    int face = std::clamp(hint, 0, nt - 1);

    auto found = [&](int f) -> std::optional<Hit> {
        Triangle tri = mesh_.triangle_at(size_t(f));
        if (std::abs(tri.signed_area()) <= kDegenerateAreaEps) {
            // Sliver face: return the nearest corner's sample (the patch
            // limit is the vertex value, and the solve below would reject
            // the triangle).
            const auto& t = mesh_.triangles[size_t(f)];
            int best = t[0];
            for (int i : {t[1], t[2]})
                if ((mesh_.vertices[size_t(i)] - p).norm2() <
                    (mesh_.vertices[size_t(best)] - p).norm2())
                    best = i;
            return Hit{values_[size_t(best)], f};
        }
        return Hit{eval_on_face(f, barycentric_solve(p, tri)), f};
    };

    // Visibility walk: hop across the first edge that has p strictly on its
    // outside. Terminates on Delaunay meshes; the cap is a safety net that
    // falls back to an exhaustive scan.
    for (int step = 0; step < 2 * nt + 16; ++step) {
        const auto& t = mesh_.triangles[size_t(face)];
        int next = -1;
        bool outside_hull = false;
        for (int e = 0; e < 3; ++e) {
            int a = t[size_t(e)], b = t[size_t((e + 1) % 3)];
            if (detail::orient2d_sign(mesh_.vertices[size_t(a)],
                                      mesh_.vertices[size_t(b)], p) < 0) {
                next = neighbor_across(face, a, b);
                outside_hull = next < 0;
                break;
            }
        }
        if (next >= 0) {
            face = next;
            continue;
        }
        if (outside_hull) return std::nullopt;
        return found(face);
    }
    for (int f = 0; f < nt; ++f) {
        Triangle tri = mesh_.triangle_at(size_t(f));
        if (std::abs(tri.signed_area()) <= kDegenerateAreaEps) continue;
        if (point_in_triangle(p, tri)) return found(f);
    }
    return std::nullopt;
}

} // namespace faceflow
