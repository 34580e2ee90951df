#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "faceflow/image_io.hpp"
#include "faceflow/landmarks.hpp"
#include "faceflow/manifest.hpp"
#include "faceflow/run_config.hpp"

#include "test_support.hpp"

using namespace faceflow;

namespace {

std::vector<LandmarkFrame> random_frames(int n, std::mt19937_64& rng) {
    std::vector<LandmarkFrame> frames(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        frames[size_t(k)].frame_index = k;
        for (int i = 0; i < kLandmarkCount; ++i)
            frames[size_t(k)].points.push_back(
                {testsup::uniform(rng, 10, 300),
                 testsup::uniform(rng, 20, 250)});
    }
    return frames;
}

void write_lines(const std::filesystem::path& p,
                 const std::vector<std::string>& lines) {
    std::ofstream out(p);
    for (const auto& l : lines) out << l << "\n";
}

// A landmark row with every coordinate set to `fill` except one override.
std::string uniform_row(double fill) {
    std::string row;
    for (int i = 0; i < 2 * kLandmarkCount; ++i)
        row += (i ? "," : "") + std::to_string(fill + i % 3);
    return row;
}

} // namespace

// ---------------------------------------------------------------------------
// landmark csv
// ---------------------------------------------------------------------------

TEST_CASE("landmark csv round trips exactly in both schemas") {
    testsup::ScopedTempDir tmp("lmk");
    std::mt19937_64 rng(41);
    auto frames = random_frames(4, rng);
    for (LandmarkSchema schema :
         {LandmarkSchema::kAllXThenAllY, LandmarkSchema::kInterleavedXY}) {
        auto path = tmp.path() / "seq.csv";
        write_landmark_csv(path, frames, schema);
        auto back = parse_landmark_csv(path, schema);
        REQUIRE(back.size() == 4);
        for (size_t k = 0; k < 4; ++k) {
            CHECK(back[k].frame_index == int(k));
            for (int i = 0; i < kLandmarkCount; ++i) {
                CHECK(back[k].points[size_t(i)].x ==
                      frames[k].points[size_t(i)].x);
                CHECK(back[k].points[size_t(i)].y ==
                      frames[k].points[size_t(i)].y);
            }
        }
    }
}

TEST_CASE("schemas place coordinates differently") {
    testsup::ScopedTempDir tmp("lmk-schema");
    auto path = tmp.path() / "s.csv";
    // x = 0..67, y = 100..167 in the planar layout.
    std::string row;
    for (int i = 0; i < kLandmarkCount; ++i) row += std::to_string(i) + ",";
    for (int i = 0; i < kLandmarkCount; ++i)
        row += std::to_string(100 + i) + (i + 1 < kLandmarkCount ? "," : "");
    write_lines(path, {row});
    auto planar = parse_landmark_csv(path, LandmarkSchema::kAllXThenAllY);
    CHECK(planar[0].points[2].x == 2.0);
    CHECK(planar[0].points[2].y == 102.0);
    auto inter = parse_landmark_csv(path, LandmarkSchema::kInterleavedXY);
    CHECK(inter[0].points[2].x == 4.0);
    CHECK(inter[0].points[2].y == 5.0);
}

TEST_CASE("header rows are skipped, data rows are not") {
    testsup::ScopedTempDir tmp("lmk-header");
    auto path = tmp.path() / "h.csv";
    std::string header;
    for (int i = 0; i < kLandmarkCount; ++i) header += "x" + std::to_string(i) + ",";
    for (int i = 0; i < kLandmarkCount; ++i)
        header += "y" + std::to_string(i) + (i + 1 < kLandmarkCount ? "," : "");
    write_lines(path, {header, uniform_row(1.5), uniform_row(2.5)});
    auto frames = parse_landmark_csv(path, LandmarkSchema::kAllXThenAllY);
    REQUIRE(frames.size() == 2);
    CHECK(frames[0].frame_index == 0);
    CHECK(frames[1].frame_index == 1);
}

TEST_CASE("extra trailing columns are ignored") {
    testsup::ScopedTempDir tmp("lmk-extra");
    auto path = tmp.path() / "e.csv";
    write_lines(path, {uniform_row(3.0) + ",0.99,0.98"});
    auto frames = parse_landmark_csv(path, LandmarkSchema::kAllXThenAllY);
    REQUIRE(frames.size() == 1);
    CHECK(frames[0].points.size() == size_t(kLandmarkCount));
}

TEST_CASE("short rows, NaN and empty files are rejected") {
    testsup::ScopedTempDir tmp("lmk-bad");
    auto path = tmp.path() / "b.csv";

    std::string short_row;
    for (int i = 0; i < 135; ++i)
        short_row += (i ? "," : "") + std::to_string(i * 0.5);
    write_lines(path, {short_row});
    CHECK_THROWS_AS(parse_landmark_csv(path, LandmarkSchema::kAllXThenAllY),
                    MalformedRow);

    // Replace the second field with nan.
    write_lines(path, {uniform_row(1.0)});
    {
        std::ifstream in(path);
        std::string row;
        std::getline(in, row);
        size_t c1 = row.find(','), c2 = row.find(',', c1 + 1);
        row = row.substr(0, c1 + 1) + "nan" + row.substr(c2);
        write_lines(path, {row});
    }
    CHECK_THROWS_AS(parse_landmark_csv(path, LandmarkSchema::kAllXThenAllY),
                    MalformedRow);

    write_lines(path, {});
    CHECK_THROWS_AS(parse_landmark_csv(path, LandmarkSchema::kAllXThenAllY),
                    EmptyFile);
    CHECK_THROWS_AS(
        parse_landmark_csv(tmp.path() / "no.csv", LandmarkSchema::kAllXThenAllY),
        IoError);
}

// ---------------------------------------------------------------------------
// manifest
// ---------------------------------------------------------------------------

namespace {

// Dataset root with one 2-frame csv per sequence id.
void make_dataset(const std::filesystem::path& root,
                  const std::vector<std::string>& ids) {
    std::mt19937_64 rng(99);
    for (const auto& id : ids) {
        auto frames = random_frames(2, rng);
        write_landmark_csv(root / (id + ".csv"), frames,
                           LandmarkSchema::kAllXThenAllY);
    }
}

} // namespace

TEST_CASE("manifest splits are subject-disjoint with rounded sizes") {
    testsup::ScopedTempDir tmp("mani");
    // 41 subjects; a few have two sequences.
    std::vector<std::string> ids;
    for (int i = 0; i < 41; ++i)
        ids.push_back("s" + std::to_string(i) + "_a");
    ids.push_back("s5_b");
    ids.push_back("s17_b");
    make_dataset(tmp.path(), ids);

    DatasetManifest m = build_manifest(tmp.path(), SplitFractions{}, 0);
    REQUIRE(m.sequences.size() == ids.size());

    std::set<std::string> train, val, test;
    for (const auto& s : m.sequences) {
        CHECK(s.frame_count == 2);
        CHECK(s.height > 0);
        CHECK(s.width > 0);
        std::string subj = subject_of(s.id);
        if (s.split == "train") train.insert(subj);
        else if (s.split == "val") val.insert(subj);
        else if (s.split == "test") test.insert(subj);
        else FAIL("unknown split " << s.split);
    }
    // round(0.7 * 41) = 29, round(0.2 * 41) = 8, remainder 4.
    CHECK(train.size() == 29);
    CHECK(val.size() == 8);
    CHECK(test.size() == 4);
    for (const auto& s : train) {
        CHECK(val.count(s) == 0);
        CHECK(test.count(s) == 0);
    }
    for (const auto& s : val) CHECK(test.count(s) == 0);

    // Sequences of one subject land in one split.
    std::string s5_split, s17_split;
    for (const auto& s : m.sequences) {
        if (subject_of(s.id) == "s5" && s.id == "s5_a") s5_split = s.split;
        if (subject_of(s.id) == "s17" && s.id == "s17_a") s17_split = s.split;
    }
    for (const auto& s : m.sequences) {
        if (s.id == "s5_b") CHECK(s.split == s5_split);
        if (s.id == "s17_b") CHECK(s.split == s17_split);
    }
}

TEST_CASE("manifest build is deterministic per seed") {
    testsup::ScopedTempDir tmp("mani-det");
    std::vector<std::string> ids;
    for (int i = 0; i < 20; ++i) ids.push_back("p" + std::to_string(i));
    make_dataset(tmp.path(), ids);
    DatasetManifest a = build_manifest(tmp.path(), SplitFractions{}, 7);
    DatasetManifest b = build_manifest(tmp.path(), SplitFractions{}, 7);
    REQUIRE(a.sequences.size() == b.sequences.size());
    bool same = true, differs_from_other_seed = false;
    for (size_t i = 0; i < a.sequences.size(); ++i)
        if (a.sequences[i].split != b.sequences[i].split) same = false;
    CHECK(same);
    DatasetManifest c = build_manifest(tmp.path(), SplitFractions{}, 8);
    for (size_t i = 0; i < a.sequences.size(); ++i)
        if (a.sequences[i].split != c.sequences[i].split)
            differs_from_other_seed = true;
    CHECK(differs_from_other_seed);
}

TEST_CASE("image size comes from frames when present, bbox otherwise") {
    testsup::ScopedTempDir tmp("mani-size");
    make_dataset(tmp.path(), {"q1", "q2"});
    // q1 gets a real frame image; q2 falls back to the landmark bbox.
    std::filesystem::create_directories(tmp.path() / "q1");
    write_pnm(ImageU8(123, 77, 1), tmp.path() / "q1" / "0000.pgm");
    DatasetManifest m = build_manifest(tmp.path(), SplitFractions{}, 0);
    for (const auto& s : m.sequences) {
        if (s.id == "q1") {
            CHECK(s.height == 123);
            CHECK(s.width == 77);
        } else {
            auto frames = parse_landmark_csv(tmp.path() / "q2.csv",
                                             LandmarkSchema::kAllXThenAllY);
            double mx = 0, my = 0;
            for (const auto& f : frames)
                for (Vec2 p : f.points) {
                    mx = std::max(mx, p.x);
                    my = std::max(my, p.y);
                }
            CHECK(s.width == int(std::ceil(mx + 1)));
            CHECK(s.height == int(std::ceil(my + 1)));
        }
    }
}

TEST_CASE("manifest io round trips") {
    testsup::ScopedTempDir tmp("mani-io");
    DatasetManifest m;
    m.sequences.push_back({"a_1", "train", 10, 480, 640});
    m.sequences.push_back({"b_2", "test", 3, 100, 200});
    auto path = tmp.path() / "m.tsv";
    write_manifest(m, path);
    DatasetManifest back = read_manifest(path);
    REQUIRE(back.sequences.size() == 2);
    CHECK(back.sequences[0].id == "a_1");
    CHECK(back.sequences[0].split == "train");
    CHECK(back.sequences[0].frame_count == 10);
    CHECK(back.sequences[1].height == 100);
    CHECK(back.sequences[1].width == 200);

    write_lines(path, {"only_two_fields\ttrain"});
    CHECK_THROWS_AS(read_manifest(path), MalformedRow);
}

TEST_CASE("subject key is the prefix before the first underscore") {
    CHECK(subject_of("s012_seq3") == "s012");
    CHECK(subject_of("s012") == "s012");
    CHECK(subject_of("a_b_c") == "a");
}

TEST_CASE("load_sequence stamps the manifest size") {
    testsup::ScopedTempDir tmp("mani-load");
    make_dataset(tmp.path(), {"z1"});
    Sequence seq = load_sequence(tmp.path(), {"z1", "train", 2, 300, 400},
                                 LandmarkSchema::kAllXThenAllY);
    CHECK(seq.id == "z1");
    CHECK(seq.height == 300);
    CHECK(seq.width == 400);
    REQUIRE(seq.frames.size() == 2);
}

// ---------------------------------------------------------------------------
// run config
// ---------------------------------------------------------------------------

TEST_CASE("run config round trips and validates") {
    testsup::ScopedTempDir tmp("cfg");
    auto path = tmp.path() / "run.cfg";
    RunConfig c;
    c.crop_offset = 12;
    c.huber_delta = 0.5;
    c.lambda1 = 1.0;
    c.lambda2 = 0.25;
    c.lambda3 = 0.0;
    c.resample_method = ResampleMethod::kPiecewiseLinear;
    write_run_config(c, path);
    RunConfig back = parse_run_config(path);
    CHECK(back.crop_offset == 12);
    CHECK(back.huber_delta == 0.5);
    CHECK(back.lambda1 == 1.0);
    CHECK(back.lambda2 == 0.25);
    CHECK(back.lambda3 == 0.0);
    CHECK(back.resample_method == ResampleMethod::kPiecewiseLinear);
}

TEST_CASE("run config defaults, comments and partial files") {
    testsup::ScopedTempDir tmp("cfg-part");
    auto path = tmp.path() / "run.cfg";
    write_lines(path, {"# comment", "", "crop_offset = 7"});
    RunConfig c = parse_run_config(path);
    CHECK(c.crop_offset == 7);
    CHECK(c.huber_delta == 1.0); // untouched defaults
    CHECK(c.lambda1 == 0.3);
    CHECK(c.resample_method == ResampleMethod::kPiecewiseCubic);
}

TEST_CASE("run config rejections") {
    testsup::ScopedTempDir tmp("cfg-bad");
    auto path = tmp.path() / "run.cfg";
    write_lines(path, {"no_such_key = 3"});
    CHECK_THROWS_AS(parse_run_config(path), MalformedRow);
    write_lines(path, {"crop_offset = -2"});
    CHECK_THROWS_AS(parse_run_config(path), MalformedRow);
    write_lines(path, {"huber_delta = 0"});
    CHECK_THROWS_AS(parse_run_config(path), MalformedRow);
    write_lines(path, {"lambda1 = 0", "lambda2 = 0", "lambda3 = 0"});
    CHECK_THROWS_AS(parse_run_config(path), MalformedRow);
    write_lines(path, {"resample_method = bicubic"});
    CHECK_THROWS_AS(parse_run_config(path), MalformedRow);
    write_lines(path, {"crop_offset = 2.5"});
    CHECK_THROWS_AS(parse_run_config(path), MalformedRow);
}
