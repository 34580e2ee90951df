#pragma once

#include <filesystem>

#include "faceflow/flow_field.hpp"
#include "faceflow/image.hpp"

namespace faceflow {

// Symmetric 2x2 strain tensor per pixel; e_xy is stored once, so symmetry
// holds by construction. Values are dimensionless (pixel per pixel).
struct StrainField {
    int height = 0;
    int width = 0;
    ScalarField e_xx, e_xy, e_yy;

    StrainField() = default;
    StrainField(int h, int w)
        : height(h), width(w), e_xx(h, w), e_xy(h, w), e_yy(h, w) {}
};

// e = (grad U + grad U^T) / 2 under the shared forward-difference scheme:
// e_xx = du/dx, e_yy = dv/dy, e_xy = (du/dy + dv/dx) / 2. Requires H, W >= 2
// so at least one real difference exists per axis.
StrainField strain_tensor(const FlowField& flow);

// Per-pixel magnitude sqrt(e_xx^2 + e_yy^2 + 2 e_xy^2).
ScalarField strain_norm(const StrainField& strain);

// Three-channel feature (u, v, strain norm) assembled at flow resolution and
// bilinearly resized to out_h x out_w (the classifier input resolution by
// default). Channel values stay physical; quantization to 8-bit is a
// separate export step.
ImageF strain_feature(const FlowField& flow, int out_h = 28, int out_w = 28);

// Binary feature container: int32 height, width, channels (little-endian)
// followed by float32 row-major interleaved samples.
void write_feature(const ImageF& feature, const std::filesystem::path& path);
ImageF read_feature(const std::filesystem::path& path);

} // namespace faceflow
