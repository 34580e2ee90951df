#pragma once

#include <optional>

#include "faceflow/flow_field.hpp"
#include "faceflow/image.hpp"

namespace faceflow {

struct FlowVisualization {
    ImageU8 image;                  // H x W x 3
    double max_magnitude_used = 0.0; // pixels; the saturation scale
};

// Classic 55-bin color-wheel rendering: hue encodes direction, saturation
// encodes magnitude relative to the normalization scale, zero vectors map to
// pure white. Without `fixed_max` the field's own maximum magnitude is the
// scale (so the rendering is invariant under positive uniform scaling of the
// field); with it, magnitudes are shown relative to the given value and
// anything larger saturates. A zero normalization scale yields an all-white
// image.
FlowVisualization colorize(const FlowField& flow,
                           std::optional<double> fixed_max = std::nullopt);

} // namespace faceflow
