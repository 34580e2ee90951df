#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "faceflow/vec2.hpp"

namespace faceflow {

// The tracker emits this many points per face; every frame must carry the
// full set.
constexpr int kLandmarkCount = 68;

// One tracked frame: the ordered landmark set plus (optionally) the frame
// image it was measured on.
struct LandmarkFrame {
    int frame_index = 0;
    std::vector<Vec2> points;
    std::string source_image_path; // empty when no image is attached
};

// A clip: ordered landmark frames sharing one image size.
struct Sequence {
    std::string id;
    std::vector<LandmarkFrame> frames;
    int height = 0;
    int width = 0;
};

// Column layout of a landmark CSV row. The layout is an explicit choice of
// the caller — sniffing could silently transpose coordinates.
enum class LandmarkSchema {
    kAllXThenAllY, // x0..x67, y0..y67
    kInterleavedXY // x0, y0, x1, y1, ...
};

// Reads one frame per row. Rows need at least 136 numeric columns (extra
// trailing columns, e.g. tracker confidences, are ignored); a non-numeric
// first row is treated as a header. Rows with a NaN coordinate are rejected
// as malformed, not imputed. frame_index is the 0-based data-row ordinal.
std::vector<LandmarkFrame> parse_landmark_csv(
    const std::filesystem::path& path, LandmarkSchema schema);

// Serializer for the same format (17 significant digits, so a round trip
// reproduces coordinates exactly).
void write_landmark_csv(const std::filesystem::path& path,
                        const std::vector<LandmarkFrame>& frames,
                        LandmarkSchema schema);

} // namespace faceflow
