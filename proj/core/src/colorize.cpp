#include "faceflow/colorize.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace faceflow {
namespace {

// Standard flow color wheel: 55 hue bins laid out over six unequal arcs
// (red-yellow 15, yellow-green 6, green-cyan 4, cyan-blue 11, blue-magenta
// 13, magenta-red 6).
constexpr int kRY = 15, kYG = 6, kGC = 4, kCB = 11, kBM = 13, kMR = 6;
constexpr int kBins = kRY + kYG + kGC + kCB + kBM + kMR;

struct Rgb {
    double r, g, b;
};

const std::array<Rgb, kBins>& color_wheel() {
    static const std::array<Rgb, kBins> wheel = [] {
        std::array<Rgb, kBins> w{};
        int k = 0;
        for (int i = 0; i < kRY; ++i, ++k) w[k] = {1.0, (double)i / kRY, 0.0};
        for (int i = 0; i < kYG; ++i, ++k)
            w[k] = {1.0 - (double)i / kYG, 1.0, 0.0};
        for (int i = 0; i < kGC; ++i, ++k) w[k] = {0.0, 1.0, (double)i / kGC};
        for (int i = 0; i < kCB; ++i, ++k)
            w[k] = {0.0, 1.0 - (double)i / kCB, 1.0};
        for (int i = 0; i < kBM; ++i, ++k) w[k] = {(double)i / kBM, 0.0, 1.0};
        for (int i = 0; i < kMR; ++i, ++k)
            w[k] = {1.0, 0.0, 1.0 - (double)i / kMR};
        return w;
    }();
    return wheel;
}

unsigned char quantize(double v) {
    return (unsigned char)std::clamp(std::floor(255.0 * v + 0.5), 0.0, 255.0);
}

} // namespace

FlowVisualization colorize(const FlowField& flow,
                           std::optional<double> fixed_max) {
    const auto& wheel = color_wheel();

    double scale;
    if (fixed_max) {
        scale = std::max(*fixed_max, 0.0);
    } else {
        double max2 = 0.0;
        for (int y = 0; y < flow.height; ++y)
            for (int x = 0; x < flow.width; ++x)
                max2 = std::max(max2, flow.at(y, x).norm2());
        scale = std::sqrt(max2);
    }

    FlowVisualization viz;
    viz.max_magnitude_used = scale;
    viz.image = ImageU8(flow.height, flow.width, 3);

    for (int y = 0; y < flow.height; ++y) {
        for (int x = 0; x < flow.width; ++x) {
            double r = 1.0, g = 1.0, b = 1.0; // zero / unsaturated -> white
            if (scale > 0.0) {
                // Normalize first: identical u/scale ratios render
                // identically, which is what makes the per-image mode
                // scale-invariant.
                const double un = flow.u(y, x) / scale;
                const double vn = flow.v(y, x) / scale;
                double rad = std::hypot(un, vn);
                const double angle = std::atan2(-vn, -un) / M_PI; // [-1, 1]
                const double fk = (angle + 1.0) / 2.0 * (kBins - 1);
                int k0 = (int)std::floor(fk);
                if (k0 >= kBins) k0 = 0;
                const int k1 = (k0 + 1) % kBins;
                const double f = fk - k0;
                rad = std::min(rad, 1.0); // fixed_max mode saturates beyond
                auto mix = [&](double c0, double c1) {
                    const double col = c0 + f * (c1 - c0);
                    return 1.0 - rad * (1.0 - col); // fade to white at zero
                };
                r = mix(wheel[k0].r, wheel[k1].r);
                g = mix(wheel[k0].g, wheel[k1].g);
                b = mix(wheel[k0].b, wheel[k1].b);
            }
            viz.image.at(y, x, 0) = quantize(r);
            viz.image.at(y, x, 1) = quantize(g);
            viz.image.at(y, x, 2) = quantize(b);
        }
    }
    return viz;
}

} // namespace faceflow
