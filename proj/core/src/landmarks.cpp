#include "faceflow/landmarks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "faceflow/errors.hpp"
#include "faceflow/flo_io.hpp"

namespace faceflow {

namespace {

// A field is text (not a double at all), a NaN, or a usable number. The
// distinction matters: only text marks a header row, while NaN and short
// rows are schema violations even on the first line.
enum class FieldKind { kNumber, kNaN, kText };

FieldKind classify_field(const std::string& s, double& out) {
    if (s.empty()) return FieldKind::kText;
    size_t pos = 0;
    try {
        out = std::stod(s, &pos);
    } catch (const std::exception&) {
        return FieldKind::kText;
    }
    if (pos != s.size()) return FieldKind::kText;
    return std::isnan(out) ? FieldKind::kNaN : FieldKind::kNumber;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    std::stringstream ss(line);
    while (std::getline(ss, cur, ',')) {
        size_t b = cur.find_first_not_of(" \t\r");
        size_t e = cur.find_last_not_of(" \t\r");
        fields.push_back(b == std::string::npos
                             ? std::string()
                             : cur.substr(b, e - b + 1));
    }
    return fields;
}

} // namespace

std::vector<LandmarkFrame> parse_landmark_csv(
    const std::filesystem::path& path, LandmarkSchema schema) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path.string());

    std::vector<LandmarkFrame> frames;
    std::string line;
    size_t row = 0;
    bool saw_content = false;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        saw_content = true;

        std::vector<std::string> fields = split_csv(line);
        std::vector<double> values(2 * kLandmarkCount);
        bool has_text = false, has_nan = false;
        for (size_t i = 0; i < std::min(fields.size(), values.size()); ++i) {
            const FieldKind kind = classify_field(fields[i], values[i]);
            if (kind == FieldKind::kText) {
                has_text = true;
                break;
            }
            if (kind == FieldKind::kNaN) has_nan = true;
        }
        if (has_text) {
            if (row == 1 && frames.empty()) continue; // header row
            throw MalformedRow("landmark row " + std::to_string(row) + " in " +
                               path.string() + ": non-numeric column");
        }
        if (fields.size() < values.size())
            throw MalformedRow("landmark row " + std::to_string(row) + " in " +
                               path.string() +
                               ": expected >= 136 numeric columns");
        if (has_nan)
            throw MalformedRow("landmark row " + std::to_string(row) + " in " +
                               path.string() + ": NaN coordinate");

        LandmarkFrame frame;
        frame.frame_index = int(frames.size());
        frame.points.resize(kLandmarkCount);
        for (int i = 0; i < kLandmarkCount; ++i) {
            if (schema == LandmarkSchema::kAllXThenAllY)
                frame.points[i] = {values[size_t(i)],
                                   values[size_t(i) + kLandmarkCount]};
            else
                frame.points[i] = {values[2 * size_t(i)],
                                   values[2 * size_t(i) + 1]};
            if (!finite(frame.points[i]))
                throw MalformedRow("landmark row " + std::to_string(row) +
                                   " in " + path.string() +
                                   ": non-finite coordinate");
        }
        frames.push_back(std::move(frame));
    }
    if (!saw_content) throw EmptyFile("empty landmark file: " + path.string());
    if (frames.empty())
        throw EmptyFile("no landmark rows in: " + path.string());
    return frames;
}

void write_landmark_csv(const std::filesystem::path& path,
                        const std::vector<LandmarkFrame>& frames,
                        LandmarkSchema schema) {
    std::string out;
    char buf[40];
    for (const LandmarkFrame& frame : frames) {
        for (int i = 0; i < 2 * kLandmarkCount; ++i) {
            double v;
            if (schema == LandmarkSchema::kAllXThenAllY)
                v = i < kLandmarkCount ? frame.points[size_t(i)].x
                                       : frame.points[size_t(i) -
                                                      kLandmarkCount].y;
            else
                v = (i % 2 == 0) ? frame.points[size_t(i) / 2].x
                                 : frame.points[size_t(i) / 2].y;
            std::snprintf(buf, sizeof buf, "%.17g", v);
            if (i) out += ',';
            out += buf;
        }
        out += '\n';
    }
    write_file_atomic(path, out);
}

} // namespace faceflow
