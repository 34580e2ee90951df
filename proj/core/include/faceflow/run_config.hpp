#pragma once

#include <filesystem>

namespace faceflow {

// Scattered-to-grid resampling scheme for the generated flow.
enum class ResampleMethod {
    kPiecewiseCubic, // C1 piecewise-cubic interpolant (default)
    kPiecewiseLinear
};

// Pipeline knobs, loaded from a key=value text file. Background fill is
// always zero and is intentionally not a knob.
struct RunConfig {
    int crop_offset = 20;     // padding around the landmark bounding box
    double huber_delta = 1.0; // Huber knee for all robust penalties
    double lambda1 = 0.3;     // multiscale endpoint term
    double lambda2 = 0.5;     // warp-consistency term
    double lambda3 = 0.2;     // angular term
    ResampleMethod resample_method = ResampleMethod::kPiecewiseCubic;
};

// Accepted keys: crop_offset, huber_delta, lambda1, lambda2, lambda3,
// resample_method (piecewise-cubic | piecewise-linear). Blank lines and
// '#' comments are skipped; unknown keys are rejected. Validates
// crop_offset >= 0, huber_delta > 0, lambdas >= 0 with a positive sum.
RunConfig parse_run_config(const std::filesystem::path& path);

// Serializer for the same format.
void write_run_config(const RunConfig& config,
                      const std::filesystem::path& path);

} // namespace faceflow
