#include "faceflow/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>

#include "faceflow/flo_io.hpp" // write_file_atomic

namespace faceflow {

ImageF to_float(const ImageU8& img) {
    ImageF out(img.height, img.width, img.channels);
    for (size_t i = 0; i < img.data.size(); ++i)
        out.data[i] = img.data[i] / 255.0;
    return out;
}

ImageU8 to_u8(const ImageF& img) {
    ImageU8 out(img.height, img.width, img.channels);
    for (size_t i = 0; i < img.data.size(); ++i) {
        const double v = std::floor(img.data[i] * 255.0 + 0.5);
        out.data[i] = (unsigned char)std::clamp(v, 0.0, 255.0);
    }
    return out;
}

ImageU8 read_png(const std::filesystem::path& path) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.string().c_str()))
        throw IoError("read_png: " + std::string(image.message));

    int channels;
    if (image.format & PNG_FORMAT_FLAG_COLOR)
        channels = (image.format & PNG_FORMAT_FLAG_ALPHA) ? 4 : 3;
    else
        channels = 1;
    image.format = channels == 4   ? PNG_FORMAT_RGBA
                   : channels == 3 ? PNG_FORMAT_RGB
                                   : PNG_FORMAT_GRAY;

    ImageU8 out((int)image.height, (int)image.width, channels);
    if (!png_image_finish_read(&image, nullptr, out.data.data(), 0, nullptr))
        throw IoError("read_png: " + std::string(image.message));
    return out;
}

void write_png(const ImageU8& img, const std::filesystem::path& path) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = (png_uint_32)img.width;
    image.height = (png_uint_32)img.height;
    image.format = img.channels == 4   ? PNG_FORMAT_RGBA
                   : img.channels == 3 ? PNG_FORMAT_RGB
                                       : PNG_FORMAT_GRAY;

    // Encode to memory first so the file itself appears atomically.
    png_alloc_size_t size = 0;
    if (!png_image_write_to_memory(&image, nullptr, &size, 0, img.data.data(),
                                   0, nullptr))
        throw IoError("write_png: " + std::string(image.message));
    std::string bytes(size, '\0');
    if (!png_image_write_to_memory(&image, bytes.data(), &size, 0,
                                   img.data.data(), 0, nullptr))
        throw IoError("write_png: " + std::string(image.message));
    bytes.resize(size);
    write_file_atomic(path, bytes);
}

ImageU8 read_pnm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("read_pnm: cannot open " + path.string());

    auto next_token = [&in]() {
        std::string tok;
        int c;
        while ((c = in.get()) != EOF) {
            if (c == '#') {
                while ((c = in.get()) != EOF && c != '\n') {}
                continue;
            }
            if (!std::isspace(c)) {
                tok.push_back((char)c);
                break;
            }
        }
        while ((c = in.get()) != EOF && !std::isspace(c))
            tok.push_back((char)c);
        return tok;
    };

    const std::string magic = next_token();
    if (magic != "P5" && magic != "P6")
        throw BadMagic("read_pnm: unsupported magic '" + magic + "'");
    const int channels = magic == "P6" ? 3 : 1;
    const int w = std::stoi(next_token());
    const int h = std::stoi(next_token());
    const int maxval = std::stoi(next_token());
    if (w <= 0 || h <= 0)
        throw DimensionMismatch("read_pnm: non-positive dimensions");
    if (maxval != 255) throw BadMagic("read_pnm: only maxval 255 supported");

    ImageU8 out(h, w, channels);
    in.read((char*)out.data.data(), (std::streamsize)out.data.size());
    if ((size_t)in.gcount() != out.data.size())
        throw TruncatedFile("read_pnm: payload truncated");
    return out;
}

void write_pnm(const ImageU8& img, const std::filesystem::path& path) {
    if (img.channels != 1 && img.channels != 3)
        throw DimensionMismatch("write_pnm: 1 or 3 channels required");
    std::string bytes = img.channels == 3 ? "P6\n" : "P5\n";
    bytes += std::to_string(img.width) + " " + std::to_string(img.height) +
             "\n255\n";
    bytes.append((const char*)img.data.data(), img.data.size());
    write_file_atomic(path, bytes);
}

namespace {
bool has_ext(const std::filesystem::path& path, const char* ext) {
    std::string e = path.extension().string();
    std::transform(e.begin(), e.end(), e.begin(),
                   [](unsigned char c) { return (char)std::tolower(c); });
    return e == ext;
}
} // namespace

ImageU8 read_image(const std::filesystem::path& path) {
    if (has_ext(path, ".ppm") || has_ext(path, ".pgm") || has_ext(path, ".pnm"))
        return read_pnm(path);
    return read_png(path);
}

void write_image(const ImageU8& img, const std::filesystem::path& path) {
    if (has_ext(path, ".ppm") || has_ext(path, ".pgm") || has_ext(path, ".pnm"))
        write_pnm(img, path);
    else
        write_png(img, path);
}

} // namespace faceflow
