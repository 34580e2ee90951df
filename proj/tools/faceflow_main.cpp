// faceflow: dense facial optical-flow ground truth and evaluation pipeline.
//
// Subcommands: generate (flow synthesis from landmark tracks), eval
// (EPE/AAE reports), warp (flow-based image warping), strain (strain
// features), viz (color-wheel rendering), metrics (classification reports).
// Exit codes: 0 success, 1 input error, 2 internal error. Diagnostics are
// key=value lines on stderr; machine-readable results go only to files, and
// every file is written atomically.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "faceflow/class_metrics.hpp"
#include "faceflow/colorize.hpp"
#include "faceflow/errors.hpp"
#include "faceflow/flo_io.hpp"
#include "faceflow/flowgen.hpp"
#include "faceflow/image_io.hpp"
#include "faceflow/losses.hpp"
#include "faceflow/manifest.hpp"
#include "faceflow/run_config.hpp"
#include "faceflow/strain.hpp"

namespace {

using namespace faceflow;

std::string fmt_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

RunConfig load_config(const std::string& path) {
    return path.empty() ? RunConfig{} : parse_run_config(path);
}

LandmarkSchema schema_from_flag(const std::string& name) {
    if (name == "x-then-y") return LandmarkSchema::kAllXThenAllY;
    if (name == "interleaved-xy") return LandmarkSchema::kInterleavedXY;
    throw MalformedRow("unknown landmark schema '" + name + "'");
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

int run_generate(const std::string& manifest_path, const std::string& out_dir,
                 const std::string& config_path, const std::string& schema,
                 int workers) {
    const DatasetManifest manifest = read_manifest(manifest_path);
    const RunConfig config = load_config(config_path);
    const LandmarkSchema lm_schema = schema_from_flag(schema);
    const std::filesystem::path root =
        std::filesystem::path(manifest_path).parent_path();
    const std::filesystem::path out(out_dir);
    std::filesystem::create_directories(out);

    // Each worker owns whole sequences; per-sequence log lines are buffered
    // and assembled in manifest order, so outputs never depend on the worker
    // count or scheduling.
    const size_t n = manifest.sequences.size();
    std::vector<std::string> log_blocks(n);
    std::vector<std::exception_ptr> failures(n);
    std::atomic<size_t> cursor{0};

    auto work = [&]() {
        for (size_t i = cursor.fetch_add(1); i < n; i = cursor.fetch_add(1)) {
            const SequenceInfo& info = manifest.sequences[i];
            try {
                Sequence seq = load_sequence(root, info, lm_schema);
                std::vector<StepLog> steps;
                std::vector<FlowField> flows =
                    generate_sequence_flow(seq, config, &steps);
                for (size_t k = 0; k < flows.size(); ++k)
                    write_flo(flows[k],
                              out / (info.id + "_" +
                                     std::to_string(k + 1) + ".flo"));
                std::string block;
                for (const StepLog& s : steps)
                    block += "seq=" + info.id + " k=" +
                             std::to_string(s.step) + " anchors=" +
                             std::to_string(s.anchors) +
                             " dropped_triangles=" +
                             std::to_string(s.dropped_triangles) + "\n";
                log_blocks[i] = std::move(block);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };

    const int pool = std::max(1, std::min<int>(workers, int(n)));
    std::vector<std::thread> threads;
    threads.reserve(size_t(pool));
    for (int t = 0; t < pool; ++t) threads.emplace_back(work);
    for (std::thread& t : threads) t.join();

    for (size_t i = 0; i < n; ++i)
        if (failures[i]) std::rethrow_exception(failures[i]);

    std::string log_text;
    for (const std::string& block : log_blocks) log_text += block;
    write_file_atomic(out / "generate.log", log_text);
    std::fputs(log_text.c_str(), stderr);
    std::fprintf(stderr, "generate sequences=%zu workers=%d out=%s\n", n,
                 pool, out_dir.c_str());
    return 0;
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

std::vector<std::string> flo_names(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw IoError("not a directory: " + dir.string());
    std::vector<std::string> names;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.path().extension() == ".flo")
            names.push_back(entry.path().filename().string());
    std::sort(names.begin(), names.end());
    return names;
}

int run_eval(const std::string& gt_dir, const std::string& pred_dir,
             const std::string& report_path) {
    const std::vector<std::string> gt_names = flo_names(gt_dir);
    const std::vector<std::string> pred_names = flo_names(pred_dir);
    if (gt_names.empty()) throw EmptyInput("no .flo files in " + gt_dir);
    if (gt_names != pred_names)
        throw DimensionMismatch(
            "gt and pred directories list different flow files (" +
            std::to_string(gt_names.size()) + " vs " +
            std::to_string(pred_names.size()) + ")");

    std::string csv = "pair,epe,aae\n";
    double epe_sum = 0.0, aae_sum = 0.0;
    for (const std::string& name : gt_names) {
        FlowField gt = read_flo(std::filesystem::path(gt_dir) / name);
        FlowField pred = read_flo(std::filesystem::path(pred_dir) / name);
        double e = epe(gt, pred);
        double a = aae(gt, pred);
        epe_sum += e;
        aae_sum += a;
        csv += name + "," + fmt_real(e) + "," + fmt_real(a) + "\n";
    }
    csv += "AGGREGATE," + fmt_real(epe_sum / double(gt_names.size())) + "," +
           fmt_real(aae_sum / double(gt_names.size())) + "\n";
    write_file_atomic(report_path, csv);
    std::fprintf(stderr, "eval pairs=%zu report=%s\n", gt_names.size(),
                 report_path.c_str());
    return 0;
}

// ---------------------------------------------------------------------------
// warp / strain / viz / metrics
// ---------------------------------------------------------------------------

int run_warp(const std::string& image_path, const std::string& flow_path,
             const std::string& out_path) {
    ImageF image = to_float(read_image(image_path));
    FlowField flow = read_flo(flow_path);
    write_image(to_u8(warp_image(image, flow)), out_path);
    std::fprintf(stderr, "warp image=%s flow=%s out=%s\n", image_path.c_str(),
                 flow_path.c_str(), out_path.c_str());
    return 0;
}

int run_strain(const std::string& flow_path, const std::string& out_path,
               const std::string& png_path, int feat_h, int feat_w) {
    FlowField flow = read_flo(flow_path);
    ImageF feature = strain_feature(flow, feat_h, feat_w);
    write_feature(feature, out_path);
    if (!png_path.empty()) {
        // 8-bit export: per-channel min-max quantization (display only; the
        // binary feature keeps physical values).
        ImageF scaled(feature.height, feature.width, feature.channels);
        for (int c = 0; c < feature.channels; ++c) {
            double lo = feature.at(0, 0, c), hi = lo;
            for (int y = 0; y < feature.height; ++y)
                for (int x = 0; x < feature.width; ++x) {
                    lo = std::min(lo, feature.at(y, x, c));
                    hi = std::max(hi, feature.at(y, x, c));
                }
            const double span = hi > lo ? hi - lo : 1.0;
            for (int y = 0; y < feature.height; ++y)
                for (int x = 0; x < feature.width; ++x)
                    scaled.at(y, x, c) = (feature.at(y, x, c) - lo) / span;
        }
        write_image(to_u8(scaled), png_path);
    }
    std::fprintf(stderr, "strain flow=%s out=%s size=%dx%d\n",
                 flow_path.c_str(), out_path.c_str(), feat_h, feat_w);
    return 0;
}

int run_viz(const std::string& flow_path, const std::string& out_path,
            double fixed_max) {
    FlowField flow = read_flo(flow_path);
    std::optional<double> max_mag;
    if (fixed_max > 0.0) max_mag = fixed_max;
    FlowVisualization viz = colorize(flow, max_mag);
    write_image(viz.image, out_path);
    std::fprintf(stderr, "viz flow=%s out=%s max_magnitude_used=%s\n",
                 flow_path.c_str(), out_path.c_str(),
                 fmt_real(viz.max_magnitude_used).c_str());
    return 0;
}

int run_metrics(const std::string& pred_path, const std::string& out_path) {
    const LabeledPredictions all = read_predictions_csv(pred_path);

    // Per-subject folds in first-appearance order; every fold is scored over
    // the file-wide class set.
    std::vector<std::string> subjects;
    std::map<std::string, LabeledPredictions> folds;
    for (size_t i = 0; i < all.true_labels.size(); ++i) {
        const std::string& s = all.subject_ids[i];
        auto [it, inserted] = folds.try_emplace(s);
        if (inserted) {
            subjects.push_back(s);
            it->second.num_classes = all.num_classes;
        }
        it->second.true_labels.push_back(all.true_labels[i]);
        it->second.predicted_labels.push_back(all.predicted_labels[i]);
    }

    std::vector<MetricsReport> reports;
    reports.reserve(subjects.size());
    for (const std::string& s : subjects)
        reports.push_back(
            compute_metrics(confusion_counts(folds[s]), all.num_classes));
    write_metrics_csv(out_path, subjects, reports, losocv_aggregate(reports));
    std::fprintf(stderr, "metrics subjects=%zu classes=%d report=%s\n",
                 subjects.size(), all.num_classes, out_path.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dense facial optical-flow ground truth and evaluation"};
    app.require_subcommand(1);
    // Global flags (--config/--workers/--seed) are accepted on either side
    // of the subcommand name.
    app.fallthrough();

    std::string config_path;
    int workers = std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t seed = 0;
    app.add_option("--config", config_path, "run configuration file");
    app.add_option("--workers", workers, "parallel sequence workers");
    app.add_option("--seed", seed,
                   "seed for randomized pipeline stages (reserved)");

    auto* generate = app.add_subcommand("generate",
                                        "synthesize flow for a manifest");
    std::string manifest_path, out_dir, schema = "x-then-y";
    generate->add_option("--manifest", manifest_path, "dataset manifest")
        ->required();
    generate->add_option("--out", out_dir, "output directory")->required();
    generate->add_option("--schema", schema,
                         "landmark csv layout: x-then-y | interleaved-xy");

    auto* eval_cmd = app.add_subcommand("eval", "EPE/AAE report over a pair "
                                                "of flow directories");
    std::string gt_dir, pred_dir, report_path;
    eval_cmd->add_option("--gt", gt_dir, "ground-truth directory")->required();
    eval_cmd->add_option("--pred", pred_dir, "prediction directory")
        ->required();
    eval_cmd->add_option("--report", report_path, "output csv")->required();

    auto* warp = app.add_subcommand("warp", "warp an image by a flow field");
    std::string image_path, flow_path, out_path;
    warp->add_option("--image", image_path, "input image")->required();
    warp->add_option("--flow", flow_path, "flow file")->required();
    warp->add_option("--out", out_path, "output image")->required();

    auto* strain = app.add_subcommand("strain", "strain feature from a flow "
                                                "field");
    std::string strain_flow, strain_out, strain_png;
    int feat_h = 28, feat_w = 28;
    strain->add_option("--flow", strain_flow, "flow file")->required();
    strain->add_option("--out", strain_out, "binary feature output")
        ->required();
    strain->add_option("--png", strain_png, "quantized 8-bit preview");
    strain->add_option("--feat-height", feat_h, "feature rows");
    strain->add_option("--feat-width", feat_w, "feature columns");

    auto* viz = app.add_subcommand("viz", "color-wheel visualization");
    std::string viz_in, viz_out;
    double viz_max = 0.0;
    viz->add_option("--in", viz_in, "flow file")->required();
    viz->add_option("--out", viz_out, "output image")->required();
    viz->add_option("--max", viz_max,
                    "fixed magnitude scale (default: per-image max)");

    auto* metrics = app.add_subcommand("metrics", "classification metrics "
                                                  "with per-subject folds");
    std::string metrics_pred, metrics_out;
    metrics->add_option("--pred", metrics_pred,
                        "csv: subject_id,true_label,predicted_label")
        ->required();
    metrics->add_option("--out", metrics_out, "report csv")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (generate->parsed())
            return run_generate(manifest_path, out_dir, config_path, schema,
                                workers);
        if (eval_cmd->parsed()) return run_eval(gt_dir, pred_dir, report_path);
        if (warp->parsed()) return run_warp(image_path, flow_path, out_path);
        if (strain->parsed())
            return run_strain(strain_flow, strain_out, strain_png, feat_h,
                              feat_w);
        if (viz->parsed()) return run_viz(viz_in, viz_out, viz_max);
        if (metrics->parsed()) return run_metrics(metrics_pred, metrics_out);
    } catch (const Error& e) {
        std::fprintf(stderr, "error=input detail=%s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error=internal detail=%s\n", e.what());
        return 2;
    }
    return 2; // unreachable: a subcommand is required
}
