#include "faceflow/strain.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "faceflow/flo_io.hpp"
#include "faceflow/losses.hpp"

namespace faceflow {

StrainField strain_tensor(const FlowField& flow) {
    if (flow.height < 2 || flow.width < 2)
        throw DimensionMismatch("strain_tensor: needs at least 2x2");
    FlowGradients g = flow_gradients(flow);
    StrainField s(flow.height, flow.width);
    for (int y = 0; y < flow.height; ++y)
        for (int x = 0; x < flow.width; ++x) {
            s.e_xx.at(y, x) = g.du_dx.at(y, x);
            s.e_yy.at(y, x) = g.dv_dy.at(y, x);
            s.e_xy.at(y, x) = 0.5 * (g.du_dy.at(y, x) + g.dv_dx.at(y, x));
        }
    return s;
}

ScalarField strain_norm(const StrainField& strain) {
    ScalarField n(strain.height, strain.width);
    for (int y = 0; y < strain.height; ++y)
        for (int x = 0; x < strain.width; ++x) {
            double xx = strain.e_xx.at(y, x);
            double yy = strain.e_yy.at(y, x);
            double xy = strain.e_xy.at(y, x);
            n.at(y, x) = std::sqrt(xx * xx + yy * yy + 2.0 * xy * xy);
        }
    return n;
}

ImageF strain_feature(const FlowField& flow, int out_h, int out_w) {
    ScalarField norm = strain_norm(strain_tensor(flow));
    ImageF feature(flow.height, flow.width, 3);
    for (int y = 0; y < flow.height; ++y)
        for (int x = 0; x < flow.width; ++x) {
            feature.at(y, x, 0) = flow.u(y, x);
            feature.at(y, x, 1) = flow.v(y, x);
            feature.at(y, x, 2) = norm.at(y, x);
        }
    return resize_image(feature, out_h, out_w);
}

namespace {

void put_u32(std::string& out, uint32_t v) {
    out.push_back((char)(v & 0xff));
    out.push_back((char)((v >> 8) & 0xff));
    out.push_back((char)((v >> 16) & 0xff));
    out.push_back((char)((v >> 24) & 0xff));
}

void put_f32(std::string& out, float f) {
    uint32_t bits;
    std::memcpy(&bits, &f, 4);
    put_u32(out, bits);
}

uint32_t get_u32(const unsigned char* p) {
    return (uint32_t)p[0] | ((uint32_t)p[1] << 8) | ((uint32_t)p[2] << 16) |
           ((uint32_t)p[3] << 24);
}

float get_f32(const unsigned char* p) {
    const uint32_t bits = get_u32(p);
    float f;
    std::memcpy(&f, &bits, 4);
    return f;
}

} // namespace

void write_feature(const ImageF& feature, const std::filesystem::path& path) {
    std::string bytes;
    bytes.reserve(12 + feature.data.size() * 4);
    put_u32(bytes, (uint32_t)feature.height);
    put_u32(bytes, (uint32_t)feature.width);
    put_u32(bytes, (uint32_t)feature.channels);
    for (double d : feature.data) put_f32(bytes, (float)d);
    write_file_atomic(path, bytes);
}

ImageF read_feature(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    if (bytes.size() < 12)
        throw TruncatedFile("read_feature: header truncated");
    const auto* p = (const unsigned char*)bytes.data();
    const int32_t h = (int32_t)get_u32(p);
    const int32_t w = (int32_t)get_u32(p + 4);
    const int32_t c = (int32_t)get_u32(p + 8);
    if (h <= 0 || w <= 0 || c <= 0)
        throw DimensionMismatch("read_feature: non-positive dimensions");
    const uint64_t expected = 12 + 4ull * h * w * c;
    if (bytes.size() != expected)
        throw TruncatedFile("read_feature: payload size mismatch");
    ImageF feature(h, w, c);
    for (size_t i = 0; i < feature.data.size(); ++i)
        feature.data[i] = get_f32(p + 12 + 4 * i);
    return feature;
}

} // namespace faceflow
