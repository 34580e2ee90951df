#pragma once

#include <vector>

#include "faceflow/flow_field.hpp"
#include "faceflow/image.hpp"

namespace faceflow {

// ---------------------------------------------------------------------------
// Resampling primitives
// ---------------------------------------------------------------------------

// Bilinear resize with the half-pixel-center coordinate map
// src = (dst + 0.5) * (src_size / dst_size) - 0.5, samples clamped to the
// image border. Identity when the sizes match; constants are preserved
// exactly (interpolation is a + t * (b - a)).
ImageF resize_image(const ImageF& img, int out_h, int out_w);

// Same resampling per flow component. When `rescale_components` is set the
// horizontal component is additionally multiplied by out_w / in_w and the
// vertical one by out_h / in_h, converting the vectors into the pixel units
// of the resized grid (the crop/zoom convention).
FlowField resize_flow(const FlowField& flow, int out_h, int out_w,
                      bool rescale_components = false);

// Backward warp: out(p) = image(p - flow(p)), sampled bilinearly with border
// clamping; the flow is anchored on the output grid. Zero flow reproduces
// the input exactly.
ImageF warp_image(const ImageF& image, const FlowField& flow);

// ---------------------------------------------------------------------------
// Multi-scale prediction stack
// ---------------------------------------------------------------------------

// Flow predictions at the 5 pyramid resolutions (H >> k, W >> k) for
// k = 1..5; levels[0] is the finest (k = 1). Construction validates the
// level dimensions against the base size.
struct MultiScaleFlow {
    int base_height = 0;
    int base_width = 0;
    std::vector<FlowField> levels;

    MultiScaleFlow(int base_h, int base_w, std::vector<FlowField> lv);
};

// Downsamples a base-resolution field into the 5-level stack (test and
// tooling helper; a perfect prediction of `base` under the matching flag).
MultiScaleFlow multiscale_from_base(const FlowField& base,
                                    bool rescale_components = false);

// Term weights for the combined losses plus the pyramid weighting scheme.
// Level k carries 2^-k; with `normalize_scale_weights` the five weights are
// divided by their sum (31/32) so they sum to exactly 1 and the lambda1-
// scaled pyramid term's weights sum to lambda1. `rescale_level_components`
// switches the pyramid (and the upsampling of the finest prediction inside
// total_loss) to the unit-rescaling resize convention.
struct LossWeights {
    double lambda1 = 0.3;
    double lambda2 = 0.5;
    double lambda3 = 0.2;
    bool normalize_scale_weights = false;
    bool rescale_level_components = false;

    double scale_weight(int k) const; // k = 1..5
};

// ---------------------------------------------------------------------------
// Losses and error metrics
// ---------------------------------------------------------------------------

// Mean Euclidean norm of the per-pixel flow difference.
double epe(const FlowField& gt, const FlowField& pred);

// Sum over pyramid levels of scale_weight(k) * epe(resized gt, pred level k).
double multiscale_epe(const FlowField& gt, const MultiScaleFlow& pred,
                      const LossWeights& weights);

// x^2 / 2 in the quadratic region |x| <= d, then linear continuation
// d^2 / 2 + d * (|x| - d).
double huber(double x, double d);

// Mean over pixels of the channel-mean Huber penalty on the image
// difference; the warp-consistency ("cyclic") photometric loss.
double cyclic_loss(const ImageF& x2, const ImageF& x2_hat, double d);

// Forward differences; the derivative on the last row/column is 0.
struct FlowGradients {
    ScalarField du_dx, du_dy, dv_dx, dv_dy;
};
FlowGradients flow_gradients(const FlowField& flow);

// Mean over pixels of the summed Huber penalties of the four partials.
double smoothness_loss(const FlowField& flow, double d);

// Mean angle between the flows lifted to homogeneous 3-vectors (u, v, 1),
// computed as atan2(|cross|, dot) for stability; range [0, pi].
double aae(const FlowField& gt, const FlowField& pred);

// lambda1 * multiscale_epe
//   + lambda2 * cyclic_loss(x2, warp_image(x1, up(pred level 1)))
//   + lambda3 * aae(gt, up(pred level 1)),
// where up() bilinearly lifts the finest prediction back to base resolution
// under the weights' component-rescaling convention.
double total_loss(const ImageF& x1, const ImageF& x2, const FlowField& gt,
                  const MultiScaleFlow& pred, const LossWeights& weights,
                  double huber_delta);

} // namespace faceflow
