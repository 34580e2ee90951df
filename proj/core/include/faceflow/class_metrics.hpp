#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "faceflow/errors.hpp"

namespace faceflow {

// Per-sample classification results over classes {0 .. num_classes-1}, with
// the subject each sample belongs to (the cross-validation fold key).
struct LabeledPredictions {
    std::vector<int> true_labels;
    std::vector<int> predicted_labels;
    std::vector<std::string> subject_ids;
    int num_classes = 0;
};

// One-vs-rest counts for a single class. True negatives never enter the
// evaluated formulas, so they are not tracked.
struct ClassCounts {
    long tp = 0;
    long fp = 0;
    long fn = 0;
};

// Fold-level report. The macro fields average per-class ratios, the micro
// fields pool counts first; each F1 is the harmonic mean of the matching
// precision/recall pair; g_mean is the geometric mean of per-class recalls.
// A zero-denominator per-class ratio contributes 0 (degenerate folds are
// penalized, never skipped).
struct MetricsReport {
    std::vector<ClassCounts> counts;
    double precision_macro = 0.0;
    double recall_macro = 0.0;
    double f1_macro = 0.0;
    double precision_micro = 0.0;
    double recall_micro = 0.0;
    double f1_micro = 0.0;
    double g_mean = 0.0;
};

// One-vs-rest confusion counting. Throws EmptyInput on an empty sample list;
// MalformedRow on a label outside {0 .. num_classes-1}; DimensionMismatch on
// ragged field lengths.
std::vector<ClassCounts> confusion_counts(const LabeledPredictions& data);

// Derives the report from per-class counts; `num_classes` must match the
// count list.
MetricsReport compute_metrics(const std::vector<ClassCounts>& counts,
                              int num_classes);

// Arithmetic mean of every metric field across the per-subject folds (the
// aggregated F1 is the mean of fold F1s, not the harmonic mean of aggregated
// precision/recall). The aggregate's counts are the pooled sums, kept as a
// diagnostic.
MetricsReport losocv_aggregate(const std::vector<MetricsReport>& per_subject);

// CSV with columns subject_id,true_label,predicted_label (header optional;
// detected by a non-numeric second column). The class count is inferred as
// max label + 1 over the whole file so every fold is scored over the same
// class set.
LabeledPredictions read_predictions_csv(const std::filesystem::path& path);

// One row per subject in first-appearance order, then an AGGREGATE row.
void write_metrics_csv(const std::filesystem::path& path,
                       const std::vector<std::string>& subjects,
                       const std::vector<MetricsReport>& reports,
                       const MetricsReport& aggregate);

} // namespace faceflow
