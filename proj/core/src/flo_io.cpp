#include "faceflow/flo_io.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>

namespace faceflow {
namespace {

constexpr float kFloTag = 202021.25f;

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

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& bytes) {
    static std::atomic<uint64_t> counter{0};
    std::filesystem::path tmp = path;
    tmp += ".tmp" + std::to_string(counter.fetch_add(1));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + tmp.string());
        out.write(bytes.data(), (std::streamsize)bytes.size());
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw IoError("short write: " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("rename failed: " + path.string());
    }
}

void write_flo(const FlowField& flow, const std::filesystem::path& path) {
    if (flow.height <= 0 || flow.width <= 0)
        throw DimensionMismatch("write_flo: non-positive dimensions");
    for (double d : flow.data)
        if (!std::isfinite(d))
            throw DimensionMismatch("write_flo: non-finite flow value");

    std::string bytes;
    bytes.reserve(12 + flow.data.size() * 4);
    put_f32(bytes, kFloTag);
    put_u32(bytes, (uint32_t)flow.width);
    put_u32(bytes, (uint32_t)flow.height);
    for (double d : flow.data) put_f32(bytes, (float)d);
    write_file_atomic(path, bytes);
}

FlowField read_flo(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    if (bytes.size() < 12) throw TruncatedFile("read_flo: header truncated");

    const auto* p = (const unsigned char*)bytes.data();
    if (get_f32(p) != kFloTag)
        throw BadMagic("read_flo: bad tag in " + path.string());
    const int32_t w = (int32_t)get_u32(p + 4);
    const int32_t h = (int32_t)get_u32(p + 8);
    if (w <= 0 || h <= 0)
        throw DimensionMismatch("read_flo: non-positive dimensions");
    const uint64_t expected = 12 + 8ull * w * h;
    if (bytes.size() != expected)
        throw TruncatedFile("read_flo: payload size mismatch");

    FlowField flow(h, w);
    for (size_t i = 0; i < flow.data.size(); ++i)
        flow.data[i] = get_f32(p + 12 + 4 * i);
    return flow;
}

} // namespace faceflow
