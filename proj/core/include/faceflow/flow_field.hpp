#pragma once

#include <vector>

#include "faceflow/errors.hpp"
#include "faceflow/vec2.hpp"

namespace faceflow {

// Dense H x W grid of 2D displacement vectors in pixel units, stored
// row-major with interleaved (u, v). u is the horizontal component, v the
// vertical one; the vector at (y, x) is the motion of that pixel from this
// frame toward the next.
struct FlowField {
    int height = 0;
    int width = 0;
    std::vector<double> data; // 2 * height * width, interleaved u,v

    FlowField() = default;
    FlowField(int h, int w) : height(h), width(w) {
        if (h <= 0 || w <= 0)
            throw DimensionMismatch("FlowField: non-positive dimensions");
        data.assign(2 * size_t(h) * w, 0.0);
    }

    double& u(int y, int x) { return data[2 * (size_t(y) * width + x)]; }
    double& v(int y, int x) { return data[2 * (size_t(y) * width + x) + 1]; }
    double u(int y, int x) const { return data[2 * (size_t(y) * width + x)]; }
    double v(int y, int x) const {
        return data[2 * (size_t(y) * width + x) + 1];
    }
    Vec2 at(int y, int x) const { return {u(y, x), v(y, x)}; }
    void set(int y, int x, Vec2 f) {
        u(y, x) = f.x;
        v(y, x) = f.y;
    }

    bool same_size(const FlowField& o) const {
        return height == o.height && width == o.width;
    }
};

// H x W scalar grid (gradients, strain norms, ...).
struct ScalarField {
    int height = 0;
    int width = 0;
    std::vector<double> data;

    ScalarField() = default;
    ScalarField(int h, int w) : height(h), width(w) {
        if (h <= 0 || w <= 0)
            throw DimensionMismatch("ScalarField: non-positive dimensions");
        data.assign(size_t(h) * w, 0.0);
    }

    double& at(int y, int x) { return data[size_t(y) * width + x]; }
    double at(int y, int x) const { return data[size_t(y) * width + x]; }
};

} // namespace faceflow
