#pragma once

#include <filesystem>

#include "faceflow/image.hpp"

namespace faceflow {

// PNG codec (any bit depth/palette input is converted to 8-bit; gray stays
// 1-channel, everything else becomes RGB/RGBA).
ImageU8 read_png(const std::filesystem::path& path);
void write_png(const ImageU8& img, const std::filesystem::path& path);

// Binary PPM (P6, 3 channels) / PGM (P5, 1 channel).
ImageU8 read_pnm(const std::filesystem::path& path);
void write_pnm(const ImageU8& img, const std::filesystem::path& path);

// Dispatch on the extension: .png vs .ppm/.pgm/.pnm.
ImageU8 read_image(const std::filesystem::path& path);
void write_image(const ImageU8& img, const std::filesystem::path& path);

} // namespace faceflow
