#pragma once

#include <vector>

#include "faceflow/errors.hpp"

namespace faceflow {

// 8-bit interleaved image, row-major; channels is 1 (gray), 3 (RGB) or
// 4 (RGBA).
struct ImageU8 {
    int height = 0;
    int width = 0;
    int channels = 0;
    std::vector<unsigned char> data;

    ImageU8() = default;
    ImageU8(int h, int w, int c) : height(h), width(w), channels(c) {
        if (h <= 0 || w <= 0 || c <= 0)
            throw DimensionMismatch("ImageU8: non-positive dimensions");
        data.assign(size_t(h) * w * c, 0);
    }

    unsigned char& at(int y, int x, int c) {
        return data[(size_t(y) * width + x) * channels + c];
    }
    unsigned char at(int y, int x, int c) const {
        return data[(size_t(y) * width + x) * channels + c];
    }
};

// Floating-point interleaved image; intensities conventionally in [0, 1].
struct ImageF {
    int height = 0;
    int width = 0;
    int channels = 0;
    std::vector<double> data;

    ImageF() = default;
    ImageF(int h, int w, int c) : height(h), width(w), channels(c) {
        if (h <= 0 || w <= 0 || c <= 0)
            throw DimensionMismatch("ImageF: non-positive dimensions");
        data.assign(size_t(h) * w * c, 0.0);
    }

    double& at(int y, int x, int c) {
        return data[(size_t(y) * width + x) * channels + c];
    }
    double at(int y, int x, int c) const {
        return data[(size_t(y) * width + x) * channels + c];
    }

    bool same_size(const ImageF& o) const {
        return height == o.height && width == o.width &&
               channels == o.channels;
    }
};

// Intensity conversions: u8 -> [0, 1] doubles and back (round-half-up with
// clamping).
ImageF to_float(const ImageU8& img);
ImageU8 to_u8(const ImageF& img);

} // namespace faceflow
