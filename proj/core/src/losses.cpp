#include "faceflow/losses.hpp"

#include <cmath>
#include <utility>

namespace faceflow {

namespace {

// Half-pixel-center source coordinate for output index i, clamped to the
// valid sample range.
inline double src_coord(int i, double scale, int in_size) {
    double s = (i + 0.5) * scale - 0.5;
    if (s < 0.0) s = 0.0;
    double hi = double(in_size - 1);
    if (s > hi) s = hi;
    return s;
}

// Splits a clamped source coordinate into base index and fraction.
inline void split_coord(double s, int in_size, int& i0, int& i1, double& t) {
    i0 = int(std::floor(s));
    if (i0 > in_size - 1) i0 = in_size - 1;
    i1 = (i0 + 1 < in_size) ? i0 + 1 : i0;
    t = s - i0;
}

inline double lerp(double a, double b, double t) { return a + t * (b - a); }

// Bilinear sample of one image channel at (sx, sy), clamped to the border.
inline double sample_bilinear(const ImageF& img, double sx, double sy, int c) {
    if (sx < 0.0) sx = 0.0;
    if (sy < 0.0) sy = 0.0;
    if (sx > img.width - 1) sx = double(img.width - 1);
    if (sy > img.height - 1) sy = double(img.height - 1);
    int x0, x1, y0, y1;
    double tx, ty;
    split_coord(sx, img.width, x0, x1, tx);
    split_coord(sy, img.height, y0, y1, ty);
    double top = lerp(img.at(y0, x0, c), img.at(y0, x1, c), tx);
    double bot = lerp(img.at(y1, x0, c), img.at(y1, x1, c), tx);
    return lerp(top, bot, ty);
}

} // namespace

ImageF resize_image(const ImageF& img, int out_h, int out_w) {
    if (out_h <= 0 || out_w <= 0)
        throw DimensionMismatch("resize_image: non-positive output size");
    ImageF out(out_h, out_w, img.channels);
    double sy = double(img.height) / out_h;
    double sx = double(img.width) / out_w;
    for (int y = 0; y < out_h; ++y) {
        double fy = src_coord(y, sy, img.height);
        int y0, y1;
        double ty;
        split_coord(fy, img.height, y0, y1, ty);
        for (int x = 0; x < out_w; ++x) {
            double fx = src_coord(x, sx, img.width);
            int x0, x1;
            double tx;
            split_coord(fx, img.width, x0, x1, tx);
            for (int c = 0; c < img.channels; ++c) {
                double top = lerp(img.at(y0, x0, c), img.at(y0, x1, c), tx);
                double bot = lerp(img.at(y1, x0, c), img.at(y1, x1, c), tx);
                out.at(y, x, c) = lerp(top, bot, ty);
            }
        }
    }
    return out;
}

FlowField resize_flow(const FlowField& flow, int out_h, int out_w,
                      bool rescale_components) {
    if (out_h <= 0 || out_w <= 0)
        throw DimensionMismatch("resize_flow: non-positive output size");
    FlowField out(out_h, out_w);
    double sy = double(flow.height) / out_h;
    double sx = double(flow.width) / out_w;
    double ru = rescale_components ? double(out_w) / flow.width : 1.0;
    double rv = rescale_components ? double(out_h) / flow.height : 1.0;
    for (int y = 0; y < out_h; ++y) {
        double fy = src_coord(y, sy, flow.height);
        int y0, y1;
        double ty;
        split_coord(fy, flow.height, y0, y1, ty);
        for (int x = 0; x < out_w; ++x) {
            double fx = src_coord(x, sx, flow.width);
            int x0, x1;
            double tx;
            split_coord(fx, flow.width, x0, x1, tx);
            double u = lerp(lerp(flow.u(y0, x0), flow.u(y0, x1), tx),
                            lerp(flow.u(y1, x0), flow.u(y1, x1), tx), ty);
            double v = lerp(lerp(flow.v(y0, x0), flow.v(y0, x1), tx),
                            lerp(flow.v(y1, x0), flow.v(y1, x1), tx), ty);
            out.u(y, x) = ru * u;
            out.v(y, x) = rv * v;
        }
    }
    return out;
}

ImageF warp_image(const ImageF& image, const FlowField& flow) {
    if (flow.height != image.height || flow.width != image.width)
        throw DimensionMismatch("warp_image: flow/image size mismatch");
    ImageF out(image.height, image.width, image.channels);
    for (int y = 0; y < image.height; ++y)
        for (int x = 0; x < image.width; ++x) {
            double sx = x - flow.u(y, x);
            double sy = y - flow.v(y, x);
            for (int c = 0; c < image.channels; ++c)
                out.at(y, x, c) = sample_bilinear(image, sx, sy, c);
        }
    return out;
}

MultiScaleFlow::MultiScaleFlow(int base_h, int base_w,
                               std::vector<FlowField> lv)
    : base_height(base_h), base_width(base_w), levels(std::move(lv)) {
    if (base_h <= 0 || base_w <= 0)
        throw DimensionMismatch("MultiScaleFlow: non-positive base size");
    if (levels.size() != 5)
        throw DimensionMismatch("MultiScaleFlow: expected 5 levels, got " +
                                std::to_string(levels.size()));
    for (int k = 1; k <= 5; ++k) {
        const FlowField& f = levels[size_t(k) - 1];
        if (f.height != (base_h >> k) || f.width != (base_w >> k))
            throw DimensionMismatch("MultiScaleFlow: level " +
                                    std::to_string(k) + " is " +
                                    std::to_string(f.height) + "x" +
                                    std::to_string(f.width) +
                                    ", expected base>>k");
    }
}

MultiScaleFlow multiscale_from_base(const FlowField& base,
                                    bool rescale_components) {
    std::vector<FlowField> levels;
    levels.reserve(5);
    for (int k = 1; k <= 5; ++k)
        levels.push_back(resize_flow(base, base.height >> k, base.width >> k,
                                     rescale_components));
    return MultiScaleFlow(base.height, base.width, std::move(levels));
}

double LossWeights::scale_weight(int k) const {
    double w = std::ldexp(1.0, -k);
    if (normalize_scale_weights)
        w /= 31.0 / 32.0; // sum of 2^-k for k = 1..5
    return w;
}

double epe(const FlowField& gt, const FlowField& pred) {
    if (!gt.same_size(pred))
        throw DimensionMismatch("epe: field size mismatch");
    double sum = 0.0;
    for (int y = 0; y < gt.height; ++y)
        for (int x = 0; x < gt.width; ++x)
            sum += std::hypot(gt.u(y, x) - pred.u(y, x),
                              gt.v(y, x) - pred.v(y, x));
    return sum / (double(gt.height) * gt.width);
}

double multiscale_epe(const FlowField& gt, const MultiScaleFlow& pred,
                      const LossWeights& weights) {
    if (gt.height != pred.base_height || gt.width != pred.base_width)
        throw DimensionMismatch("multiscale_epe: gt/base size mismatch");
    double sum = 0.0;
    for (int k = 1; k <= 5; ++k) {
        const FlowField& level = pred.levels[size_t(k) - 1];
        FlowField gt_k = resize_flow(gt, level.height, level.width,
                                     weights.rescale_level_components);
        sum += weights.scale_weight(k) * epe(gt_k, level);
    }
    return sum;
}

double huber(double x, double d) {
    double a = std::fabs(x);
    if (a <= d) return 0.5 * x * x;
    return 0.5 * d * d + d * (a - d);
}

double cyclic_loss(const ImageF& x2, const ImageF& x2_hat, double d) {
    if (!x2.same_size(x2_hat))
        throw DimensionMismatch("cyclic_loss: image size mismatch");
    double sum = 0.0;
    for (int y = 0; y < x2.height; ++y)
        for (int x = 0; x < x2.width; ++x) {
            double px = 0.0;
            for (int c = 0; c < x2.channels; ++c)
                px += huber(x2.at(y, x, c) - x2_hat.at(y, x, c), d);
            sum += px / x2.channels;
        }
    return sum / (double(x2.height) * x2.width);
}

FlowGradients flow_gradients(const FlowField& flow) {
    FlowGradients g{ScalarField(flow.height, flow.width),
                    ScalarField(flow.height, flow.width),
                    ScalarField(flow.height, flow.width),
                    ScalarField(flow.height, flow.width)};
    for (int y = 0; y < flow.height; ++y)
        for (int x = 0; x < flow.width; ++x) {
            if (x + 1 < flow.width) {
                g.du_dx.at(y, x) = flow.u(y, x + 1) - flow.u(y, x);
                g.dv_dx.at(y, x) = flow.v(y, x + 1) - flow.v(y, x);
            }
            if (y + 1 < flow.height) {
                g.du_dy.at(y, x) = flow.u(y + 1, x) - flow.u(y, x);
                g.dv_dy.at(y, x) = flow.v(y + 1, x) - flow.v(y, x);
            }
        }
    return g;
}

double smoothness_loss(const FlowField& flow, double d) {
    FlowGradients g = flow_gradients(flow);
    double sum = 0.0;
    for (int y = 0; y < flow.height; ++y)
        for (int x = 0; x < flow.width; ++x)
            sum += huber(g.du_dx.at(y, x), d) + huber(g.du_dy.at(y, x), d) +
                   huber(g.dv_dx.at(y, x), d) + huber(g.dv_dy.at(y, x), d);
    return sum / (double(flow.height) * flow.width);
}

double aae(const FlowField& gt, const FlowField& pred) {
    if (!gt.same_size(pred))
        throw DimensionMismatch("aae: field size mismatch");
    double sum = 0.0;
    for (int y = 0; y < gt.height; ++y)
        for (int x = 0; x < gt.width; ++x) {
            double u1 = gt.u(y, x), v1 = gt.v(y, x);
            double u2 = pred.u(y, x), v2 = pred.v(y, x);
            // (u1, v1, 1) x (u2, v2, 1) = (v1 - v2, u2 - u1, u1 v2 - v1 u2)
            double cx = v1 - v2;
            double cy = u2 - u1;
            double cz = u1 * v2 - v1 * u2;
            double cross = std::sqrt(cx * cx + cy * cy + cz * cz);
            double dot = u1 * u2 + v1 * v2 + 1.0;
            sum += std::atan2(cross, dot);
        }
    return sum / (double(gt.height) * gt.width);
}

double total_loss(const ImageF& x1, const ImageF& x2, const FlowField& gt,
                  const MultiScaleFlow& pred, const LossWeights& weights,
                  double huber_delta) {
    if (!x1.same_size(x2))
        throw DimensionMismatch("total_loss: image pair size mismatch");
    if (x1.height != gt.height || x1.width != gt.width)
        throw DimensionMismatch("total_loss: image/flow size mismatch");
    // The photometric and angular terms compare against the finest
    // prediction lifted back to base resolution.
    FlowField pred_base = resize_flow(pred.levels[0], gt.height, gt.width,
                                      weights.rescale_level_components);
    double l_scale = multiscale_epe(gt, pred, weights);
    double l_cyc = cyclic_loss(x2, warp_image(x1, pred_base), huber_delta);
    double l_ang = aae(gt, pred_base);
    return weights.lambda1 * l_scale + weights.lambda2 * l_cyc +
           weights.lambda3 * l_ang;
}

} // namespace faceflow
