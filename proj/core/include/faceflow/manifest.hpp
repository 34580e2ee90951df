#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "faceflow/landmarks.hpp"

namespace faceflow {

// One manifest row: a sequence descriptor plus the split it belongs to.
struct SequenceInfo {
    std::string id;
    std::string split; // "train", "val" or "test"
    int frame_count = 0;
    int height = 0;
    int width = 0;
};

struct DatasetManifest {
    std::vector<SequenceInfo> sequences;
};

struct SplitFractions {
    double train = 0.7;
    double val = 0.2;
    double test = 0.1;
};

// Scans `root` for `<sequence_id>.csv` landmark files and assigns each
// SUBJECT (the sequence-id prefix before the first '_', or the whole id) to
// exactly one split, so no subject ever spans splits. Subjects are shuffled
// by a seeded Fisher-Yates pass over their sorted list; split sizes are
// round(fraction * n) for train and val, remainder test. Frame counts come
// from the CSVs; the image size is taken from `<root>/<id>/` frame images
// when present, otherwise from the landmark bounding box (ceil(max + 1), so
// every point is in bounds). Fractions must sum to 1 within 1e-9.
DatasetManifest build_manifest(const std::filesystem::path& root,
                               SplitFractions fractions, uint64_t seed = 0);

// Line format: sequence_id<TAB>split<TAB>frame_count<TAB>H<TAB>W.
DatasetManifest read_manifest(const std::filesystem::path& path);
void write_manifest(const DatasetManifest& manifest,
                    const std::filesystem::path& path);

// Loads `<dir>/<id>.csv` for a manifest row and stamps the row's image size
// onto the sequence.
Sequence load_sequence(const std::filesystem::path& dir,
                       const SequenceInfo& info, LandmarkSchema schema);

// Subject key used for split disjointness: the id prefix before the first
// '_' (the whole id when there is none).
std::string subject_of(const std::string& sequence_id);

} // namespace faceflow
