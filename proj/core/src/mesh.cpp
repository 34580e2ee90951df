#include "faceflow/mesh.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace faceflow {

void canonicalize(TriangleMesh& mesh) {
    for (auto& t : mesh.triangles) {
        // Rotate (not sort) so the cyclic orientation survives.
        int lo = 0;
        if (t[1] < t[lo]) lo = 1;
        if (t[2] < t[lo]) lo = 2;
        std::array<int, 3> r = {t[lo], t[(lo + 1) % 3], t[(lo + 2) % 3]};
        t = r;
    }
    std::sort(mesh.triangles.begin(), mesh.triangles.end());
}

void write_off(const TriangleMesh& mesh, std::ostream& out) {
    out << "OFF\n"
        << mesh.vertices.size() << ' ' << mesh.triangles.size() << " 0\n";
    out.precision(17);
    for (const Vec2& v : mesh.vertices) out << v.x << ' ' << v.y << " 0\n";
    for (const auto& t : mesh.triangles)
        out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

std::string to_off(const TriangleMesh& mesh) {
    std::ostringstream ss;
    write_off(mesh, ss);
    return ss.str();
}

} // namespace faceflow
