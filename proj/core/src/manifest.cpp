#include "faceflow/manifest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "faceflow/errors.hpp"
#include "faceflow/flo_io.hpp"
#include "faceflow/image_io.hpp"

namespace faceflow {

std::string subject_of(const std::string& sequence_id) {
    size_t pos = sequence_id.find('_');
    return pos == std::string::npos ? sequence_id : sequence_id.substr(0, pos);
}

namespace {

// Image size for a sequence: first frame image under <root>/<id>/ when one
// exists, else the landmark bounding-box ceiling (+1 keeps every coordinate
// strictly inside [0, size-1]).
void sequence_size(const std::filesystem::path& root, const std::string& id,
                   const std::vector<LandmarkFrame>& frames, int& h, int& w) {
    std::filesystem::path frame_dir = root / id;
    if (std::filesystem::is_directory(frame_dir)) {
        std::vector<std::filesystem::path> images;
        for (const auto& entry :
             std::filesystem::directory_iterator(frame_dir)) {
            std::string ext = entry.path().extension().string();
            if (ext == ".png" || ext == ".ppm" || ext == ".pgm" ||
                ext == ".pnm")
                images.push_back(entry.path());
        }
        if (!images.empty()) {
            std::sort(images.begin(), images.end());
            ImageU8 img = read_image(images.front());
            h = img.height;
            w = img.width;
            return;
        }
    }
    double max_x = 0.0, max_y = 0.0;
    for (const LandmarkFrame& f : frames)
        for (const Vec2& p : f.points) {
            max_x = std::max(max_x, p.x);
            max_y = std::max(max_y, p.y);
        }
    h = int(std::ceil(max_y + 1.0));
    w = int(std::ceil(max_x + 1.0));
}

} // namespace

DatasetManifest build_manifest(const std::filesystem::path& root,
                               SplitFractions fractions, uint64_t seed) {
    double sum = fractions.train + fractions.val + fractions.test;
    if (std::fabs(sum - 1.0) > 1e-9)
        throw MalformedRow("split fractions sum to " + std::to_string(sum) +
                           ", expected 1");

    // Sequence ids, sorted for scan-order independence.
    std::vector<std::string> ids;
    if (std::filesystem::is_directory(root))
        for (const auto& entry : std::filesystem::directory_iterator(root))
            if (entry.path().extension() == ".csv")
                ids.push_back(entry.path().stem().string());
    std::sort(ids.begin(), ids.end());
    if (ids.empty())
        throw EmptyDataset("no landmark csv files under " + root.string());

    // Subjects in sorted order, then a seeded Fisher-Yates shuffle; the
    // shuffle is spelled out so the assignment is reproducible everywhere.
    std::vector<std::string> subjects;
    for (const std::string& id : ids) subjects.push_back(subject_of(id));
    std::sort(subjects.begin(), subjects.end());
    subjects.erase(std::unique(subjects.begin(), subjects.end()),
                   subjects.end());
    std::mt19937_64 rng(seed);
    for (size_t i = subjects.size(); i > 1; --i)
        std::swap(subjects[i - 1], subjects[rng() % i]);

    const long n = long(subjects.size());
    long n_train = std::lround(fractions.train * double(n));
    long n_val = std::lround(fractions.val * double(n));
    n_train = std::clamp(n_train, 0l, n);
    n_val = std::clamp(n_val, 0l, n - n_train);
    std::map<std::string, std::string> split_of;
    for (long i = 0; i < n; ++i)
        split_of[subjects[size_t(i)]] =
            i < n_train ? "train" : (i < n_train + n_val ? "val" : "test");

    DatasetManifest manifest;
    for (const std::string& id : ids) {
        std::vector<LandmarkFrame> frames =
            parse_landmark_csv(root / (id + ".csv"),
                               LandmarkSchema::kAllXThenAllY);
        SequenceInfo info;
        info.id = id;
        info.split = split_of[subject_of(id)];
        info.frame_count = int(frames.size());
        sequence_size(root, id, frames, info.height, info.width);
        manifest.sequences.push_back(std::move(info));
    }
    return manifest;
}

DatasetManifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path.string());

    DatasetManifest manifest;
    std::string line;
    size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        SequenceInfo info;
        if (!(std::getline(ss, info.id, '\t') &&
              std::getline(ss, info.split, '\t') &&
              ss >> info.frame_count >> info.height >> info.width))
            throw MalformedRow("manifest row " + std::to_string(row) + " in " +
                               path.string());
        if (info.split != "train" && info.split != "val" &&
            info.split != "test")
            throw MalformedRow("manifest row " + std::to_string(row) +
                               ": unknown split '" + info.split + "'");
        manifest.sequences.push_back(std::move(info));
    }
    if (manifest.sequences.empty())
        throw EmptyDataset("empty manifest: " + path.string());
    return manifest;
}

void write_manifest(const DatasetManifest& manifest,
                    const std::filesystem::path& path) {
    std::string out;
    for (const SequenceInfo& info : manifest.sequences) {
        out += info.id + '\t' + info.split + '\t' +
               std::to_string(info.frame_count) + '\t' +
               std::to_string(info.height) + '\t' +
               std::to_string(info.width) + '\n';
    }
    write_file_atomic(path, out);
}

Sequence load_sequence(const std::filesystem::path& dir,
                       const SequenceInfo& info, LandmarkSchema schema) {
    Sequence seq;
    seq.id = info.id;
    seq.frames = parse_landmark_csv(dir / (info.id + ".csv"), schema);
    seq.height = info.height;
    seq.width = info.width;
    return seq;
}

} // namespace faceflow
