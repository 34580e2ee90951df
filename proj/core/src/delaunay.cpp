#include "faceflow/delaunay.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <deque>
#include <utility>

#include "faceflow/detail/predicates.hpp"
#include "faceflow/errors.hpp"

namespace faceflow {
namespace {

using detail::incircle_sign;
using detail::orient2d_sign;
using detail::strictly_between;

// Symbolic vertex at infinity. Every hull edge carries a "ghost" triangle
// (edge + GHOST); the ghost ring replaces the classic oversized
// super-triangle, whose finite coordinates would otherwise poison
// circumcircle tests near the hull.
constexpr int GHOST = -1;

struct DTri {
    std::array<int, 3> v{};   // vertex indices, GHOST allowed in any slot
    std::array<int, 3> nbr{}; // nbr[i] = triangle across the edge opposite v[i]
};

struct BoundaryEdge {
    int e0 = 0, e1 = 0; // directed edge as stored in the dying triangle
    int outer = -1;     // surviving neighbor across (e0, e1)
};

class Builder {
public:
    explicit Builder(const std::vector<Vec2>& pts) : pts_(pts) {}

    // Entry point; returns canonicalized finite triangles.
    std::vector<std::array<int, 3>> run();

private:
    const std::vector<Vec2>& pts_;
    std::vector<DTri> tris_;
    std::vector<char> alive_;
    std::vector<int> free_;
    // Per-insertion memo: cavity verdict for each visited triangle.
    std::vector<int> seen_epoch_;
    std::vector<char> seen_bad_;
    int epoch_ = 0;
    int hint_ = -1; // some alive triangle, preferably finite and recent

    int ghost_slot(const DTri& t) const {
        for (int i = 0; i < 3; ++i)
            if (t.v[i] == GHOST) return i;
        return -1;
    }
    bool is_ghost(int ti) const { return ghost_slot(tris_[ti]) >= 0; }

    int orient(int i, int j, Vec2 p) const {
        return orient2d_sign(pts_[i], pts_[j], p);
    }

    int new_tri(int a, int b, int c) {
        int id;
        if (!free_.empty()) {
            id = free_.back();
            free_.pop_back();
            tris_[id] = DTri{};
            alive_[id] = 1;
        } else {
            id = (int)tris_.size();
            tris_.push_back(DTri{});
            alive_.push_back(1);
            seen_epoch_.push_back(0);
            seen_bad_.push_back(0);
        }
        tris_[id].v = {a, b, c};
        tris_[id].nbr = {-1, -1, -1};
        return id;
    }

    void kill(int ti) {
        alive_[ti] = 0;
        free_.push_back(ti);
    }

    // Slot of the edge (a, b) (in either stored direction) within triangle t;
    // the edge opposite v[i] is (v[i+1], v[i+2]).
    int edge_slot(int ti, int a, int b) const {
        const DTri& t = tris_[ti];
        for (int i = 0; i < 3; ++i) {
            int p = t.v[(i + 1) % 3], q = t.v[(i + 2) % 3];
            if ((p == a && q == b) || (p == b && q == a)) return i;
        }
        return -1;
    }

    bool ghost_is_bad(int ti, Vec2 d) const;
    bool finite_is_bad(int ti, int d_idx, Vec2 d, int approach_slot,
                       bool strict_only) const;
    bool in_cavity(int ti, int d_idx, Vec2 d, int approach_slot,
                   bool strict_only) const;

    int locate_seed(Vec2 d, int d_idx, bool& duplicate);
    bool grow_cavity(int seed, int d_idx, bool strict_only,
                     std::vector<int>& cavity,
                     std::vector<BoundaryEdge>& boundary);
    void insert_point(int d_idx);
    void bootstrap(int i0, int i1, int i2);
};

bool Builder::ghost_is_bad(int ti, Vec2 d) const {
    const DTri& t = tris_[ti];
    const int g = ghost_slot(t);
    // Directed finite edge (a, b) with the outside of the hull on its left.
    const int a = t.v[(g + 1) % 3];
    const int b = t.v[(g + 2) % 3];
    const int o = orient(a, b, d);
    if (o > 0) return true;  // strictly outside this hull edge
    if (o < 0) return false; // strictly inside
    // Collinear with the hull edge: the ghost dies only when d splits the
    // edge itself. A point beyond the endpoints belongs to a neighboring
    // ghost (the hull turns there), not to this one.
    return strictly_between(pts_[a], pts_[b], d);
}

bool Builder::finite_is_bad(int ti, int d_idx, Vec2 d, int approach_slot,
                            bool strict_only) const {
    const DTri& t = tris_[ti];
    const int s = incircle_sign(pts_[t.v[0]], pts_[t.v[1]], pts_[t.v[2]], d);
    if (s > 0) return true;
    if (s < 0 || strict_only) return false;

    // Exactly cocircular. d lies on the circumcircle, strictly outside the
    // triangle, so exactly one edge strictly separates d from the triangle.
    // The quadrilateral (opposite vertex, edge, d) is inscribed and convex;
    // keep the diagonal that carries the lowest vertex index. Only decide
    // when approached across the separating edge, so the cavity stays
    // star-shaped around d.
    int sep = -1;
    for (int i = 0; i < 3; ++i) {
        if (orient(t.v[(i + 1) % 3], t.v[(i + 2) % 3], d) < 0) {
            sep = i;
            break;
        }
    }
    if (sep < 0 || sep != approach_slot) return false;
    const int opp = t.v[sep];
    const int u = t.v[(sep + 1) % 3];
    const int w = t.v[(sep + 2) % 3];
    return std::min(opp, d_idx) < std::min(u, w);
}

bool Builder::in_cavity(int ti, int d_idx, Vec2 d, int approach_slot,
                        bool strict_only) const {
    if (is_ghost(ti)) return ghost_is_bad(ti, d);
    return finite_is_bad(ti, d_idx, d, approach_slot, strict_only);
}

// Walks from the hint toward d. Returns a triangle that is guaranteed to be
// in d's cavity (finite triangle containing d, or a bad ghost). Sets
// `duplicate` when d coincides exactly with an existing mesh vertex.
int Builder::locate_seed(Vec2 d, int d_idx, bool& duplicate) {
    duplicate = false;
    int cur = hint_;
    // A finite alive triangle always exists after bootstrap.
    if (cur < 0 || !alive_[cur] || is_ghost(cur)) {
        cur = -1;
        for (int i = 0; i < (int)tris_.size(); ++i)
            if (alive_[i] && !is_ghost(i)) {
                cur = i;
                break;
            }
    }

    const std::size_t max_steps = 4 * tris_.size() + 64;
    for (std::size_t step = 0; step < max_steps; ++step) {
        if (is_ghost(cur)) {
            // Entered the ghost ring. If this ghost sees d we are done;
            // otherwise d is collinear with the hull edge and lies beyond an
            // endpoint: advance around the ring toward that endpoint.
            if (ghost_is_bad(cur, d)) return cur;
            const DTri& t = tris_[cur];
            const int g = ghost_slot(t);
            const int a = t.v[(g + 1) % 3];
            const int b = t.v[(g + 2) % 3];
            if (pts_[a] == d || pts_[b] == d) {
                duplicate = true;
                return cur;
            }
            // nbr opposite a shares edge (b, GHOST): the next ghost around b.
            const Vec2 pa = pts_[a], pb = pts_[b];
            const bool toward_b =
                std::abs(pb.x - pa.x) >= std::abs(pb.y - pa.y)
                    ? (pb.x > pa.x ? d.x > pb.x : d.x < pb.x)
                    : (pb.y > pa.y ? d.y > pb.y : d.y < pb.y);
            cur = toward_b ? t.nbr[(g + 1) % 3] : t.nbr[(g + 2) % 3];
            continue;
        }

        const DTri& t = tris_[cur];
        if (pts_[t.v[0]] == d || pts_[t.v[1]] == d || pts_[t.v[2]] == d) {
            duplicate = true;
            return cur;
        }
        int zero_beyond = -1;
        int next = -1;
        bool inside = true;
        for (int i = 0; i < 3; ++i) {
            const int p = t.v[(i + 1) % 3];
            const int q = t.v[(i + 2) % 3];
            const int o = orient(p, q, d);
            if (o < 0) {
                next = t.nbr[i];
                inside = false;
                break;
            }
            if (o == 0 && !strictly_between(pts_[p], pts_[q], d)) {
                // On the edge's line but outside the closed segment: d is not
                // in this triangle; cross toward the line's continuation.
                zero_beyond = t.nbr[i];
                inside = false;
            }
        }
        if (next >= 0) {
            cur = next;
            continue;
        }
        if (inside) return cur; // contains d (possibly on an open edge)
        cur = zero_beyond;
    }

    // The walk should always terminate; scan as a last resort so a logic
    // error degrades to O(n) instead of an infinite loop.
    for (int i = 0; i < (int)tris_.size(); ++i) {
        if (!alive_[i]) continue;
        if (in_cavity(i, d_idx, d, -2, true)) return i;
    }
    throw DegenerateInput("delaunay: point location failed");
}

// Breadth-first cavity collection from the seed. Returns false when the
// boundary fails the visibility check (can only happen through the cocircular
// tie rule), in which case the caller retries with strict_only = true.
bool Builder::grow_cavity(int seed, int d_idx, bool strict_only,
                          std::vector<int>& cavity,
                          std::vector<BoundaryEdge>& boundary) {
    const Vec2 d = pts_[d_idx];
    ++epoch_;
    cavity.clear();
    boundary.clear();

    seen_epoch_[seed] = epoch_;
    seen_bad_[seed] = 1;
    std::deque<int> frontier{seed};
    while (!frontier.empty()) {
        const int ti = frontier.front();
        frontier.pop_front();
        cavity.push_back(ti);
        const DTri t = tris_[ti];
        for (int i = 0; i < 3; ++i) {
            const int n = t.nbr[i];
            const int e0 = t.v[(i + 1) % 3];
            const int e1 = t.v[(i + 2) % 3];
            bool n_bad;
            if (seen_epoch_[n] == epoch_) {
                n_bad = seen_bad_[n];
                if (!n_bad) boundary.push_back({e0, e1, n});
                continue;
            }
            const int approach = edge_slot(n, e0, e1);
            n_bad = in_cavity(n, d_idx, d, approach, strict_only);
            seen_epoch_[n] = epoch_;
            seen_bad_[n] = (char)n_bad;
            if (n_bad)
                frontier.push_back(n);
            else
                boundary.push_back({e0, e1, n});
        }
    }

    // Star-shape validation: every finite boundary edge must see d on its
    // cavity side, otherwise the fan would create an inverted triangle.
    for (const BoundaryEdge& be : boundary) {
        if (be.e0 == GHOST || be.e1 == GHOST) continue;
        if (orient(be.e0, be.e1, d) <= 0) return false;
    }
    return true;
}

void Builder::insert_point(int d_idx) {
    const Vec2 d = pts_[d_idx];
    bool duplicate = false;
    const int seed = locate_seed(d, d_idx, duplicate);
    if (duplicate) return;

    std::vector<int> cavity;
    std::vector<BoundaryEdge> boundary;
    if (!grow_cavity(seed, d_idx, /*strict_only=*/false, cavity, boundary)) {
        // Degenerate multi-cocircular configuration: fall back to the
        // classical strictly-bad cavity, which is provably star-shaped.
        const bool ok =
            grow_cavity(seed, d_idx, /*strict_only=*/true, cavity, boundary);
        if (!ok) throw DegenerateInput("delaunay: cavity construction failed");
    }

    for (int ti : cavity) kill(ti);

    // One new triangle per boundary edge, all sharing d.
    std::vector<int> fresh;
    fresh.reserve(boundary.size());
    for (const BoundaryEdge& be : boundary)
        fresh.push_back(new_tri(be.e0, be.e1, d_idx));

    for (std::size_t i = 0; i < boundary.size(); ++i) {
        const BoundaryEdge& be = boundary[i];
        const int ti = fresh[i];
        // Across (e0, e1): the surviving outer triangle.
        tris_[ti].nbr[2] = be.outer;
        const int os = edge_slot(be.outer, be.e0, be.e1);
        tris_[be.outer].nbr[os] = ti;
        // Across (e1, d) and (d, e0): sibling fan triangles. The sibling
        // sharing (e1, d) starts at e1; the one sharing (d, e0) ends at e0.
        for (std::size_t j = 0; j < boundary.size(); ++j) {
            if (boundary[j].e0 == be.e1) tris_[ti].nbr[0] = fresh[j];
            if (boundary[j].e1 == be.e0) tris_[ti].nbr[1] = fresh[j];
        }
    }

    // Prefer a finite hint: walks start faster from finite triangles.
    hint_ = fresh.front();
    for (int ti : fresh)
        if (!is_ghost(ti)) {
            hint_ = ti;
            break;
        }
}

void Builder::bootstrap(int i0, int i1, int i2) {
    if (orient(i0, i1, pts_[i2]) < 0) std::swap(i1, i2);
    const int t = new_tri(i0, i1, i2);
    // Ghost per directed hull edge, reversed so the outside is on the left.
    const int g0 = new_tri(i1, i0, GHOST);
    const int g1 = new_tri(i2, i1, GHOST);
    const int g2 = new_tri(i0, i2, GHOST);
    // Finite triangle: nbr[i] is across the edge opposite v[i].
    tris_[t].nbr = {g1, g2, g0};
    // Ghost (b, a, GHOST): slot 2 faces the finite edge; slots 0/1 face the
    // neighboring ghosts around the ring.
    tris_[g0].nbr = {g2, g1, t};
    tris_[g1].nbr = {g0, g2, t};
    tris_[g2].nbr = {g1, g0, t};
    hint_ = t;
}

std::vector<std::array<int, 3>> Builder::run() {
    const int n = (int)pts_.size();
    if (n < 3) throw DegenerateInput("delaunay: fewer than 3 points");

    // First two distinct points, then the first point off their line.
    int i0 = 0;
    int i1 = -1;
    for (int i = 1; i < n; ++i)
        if (!(pts_[i] == pts_[i0])) {
            i1 = i;
            break;
        }
    if (i1 < 0) throw DegenerateInput("delaunay: all points coincide");
    int i2 = -1;
    for (int i = i1 + 1; i < n; ++i)
        if (orient2d_sign(pts_[i0], pts_[i1], pts_[i]) != 0) {
            i2 = i;
            break;
        }
    if (i2 < 0) throw DegenerateInput("delaunay: all points collinear");

    bootstrap(i0, i1, i2);
    for (int i = 1; i < n; ++i) {
        if (i == i1 || i == i2) continue;
        insert_point(i);
    }

    std::vector<std::array<int, 3>> out;
    for (int ti = 0; ti < (int)tris_.size(); ++ti) {
        if (!alive_[ti] || is_ghost(ti)) continue;
        out.push_back(tris_[ti].v);
    }
    return out;
}

} // namespace

TriangleMesh delaunay(const std::vector<Vec2>& points) {
    for (const Vec2& p : points)
        if (!finite(p)) throw DegenerateInput("delaunay: non-finite point");
    TriangleMesh mesh;
    mesh.vertices = points;
    mesh.triangles = Builder(points).run();
    canonicalize(mesh);
    return mesh;
}

} // namespace faceflow
