#include "faceflow/class_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "faceflow/flo_io.hpp"

namespace faceflow {

namespace {

// Ratio with the zero-denominator-contributes-0 convention.
double ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

double harmonic(double p, double r) {
    return (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

} // namespace

std::vector<ClassCounts> confusion_counts(const LabeledPredictions& data) {
    const size_t m = data.true_labels.size();
    if (m == 0) throw EmptyInput("confusion_counts: no samples");
    if (data.predicted_labels.size() != m ||
        (!data.subject_ids.empty() && data.subject_ids.size() != m))
        throw DimensionMismatch("confusion_counts: ragged field lengths");
    if (data.num_classes <= 0)
        throw MalformedRow("confusion_counts: non-positive class count");

    std::vector<ClassCounts> counts(size_t(data.num_classes));
    for (size_t i = 0; i < m; ++i) {
        int t = data.true_labels[i];
        int p = data.predicted_labels[i];
        if (t < 0 || t >= data.num_classes || p < 0 || p >= data.num_classes)
            throw MalformedRow("confusion_counts: label out of range at row " +
                               std::to_string(i));
        if (t == p) {
            counts[size_t(t)].tp++;
        } else {
            counts[size_t(t)].fn++;
            counts[size_t(p)].fp++;
        }
    }
    return counts;
}

MetricsReport compute_metrics(const std::vector<ClassCounts>& counts,
                              int num_classes) {
    if (num_classes <= 0 || counts.size() != size_t(num_classes))
        throw DimensionMismatch("compute_metrics: count/class mismatch");

    MetricsReport r;
    r.counts = counts;
    long tp_pool = 0, fp_pool = 0, fn_pool = 0;
    double precision_sum = 0.0, recall_sum = 0.0, recall_prod = 1.0;
    for (const ClassCounts& c : counts) {
        precision_sum += ratio(double(c.tp), double(c.tp + c.fp));
        double recall = ratio(double(c.tp), double(c.tp + c.fn));
        recall_sum += recall;
        recall_prod *= recall;
        tp_pool += c.tp;
        fp_pool += c.fp;
        fn_pool += c.fn;
    }
    r.precision_macro = precision_sum / num_classes;
    r.recall_macro = recall_sum / num_classes;
    r.f1_macro = harmonic(r.precision_macro, r.recall_macro);
    r.precision_micro = ratio(double(tp_pool), double(tp_pool + fp_pool));
    r.recall_micro = ratio(double(tp_pool), double(tp_pool + fn_pool));
    r.f1_micro = harmonic(r.precision_micro, r.recall_micro);
    r.g_mean = std::pow(recall_prod, 1.0 / num_classes);
    return r;
}

MetricsReport losocv_aggregate(const std::vector<MetricsReport>& per_subject) {
    if (per_subject.empty()) throw EmptyInput("losocv_aggregate: no folds");

    MetricsReport agg;
    for (const MetricsReport& r : per_subject) {
        if (r.counts.size() > agg.counts.size())
            agg.counts.resize(r.counts.size());
        for (size_t i = 0; i < r.counts.size(); ++i) {
            agg.counts[i].tp += r.counts[i].tp;
            agg.counts[i].fp += r.counts[i].fp;
            agg.counts[i].fn += r.counts[i].fn;
        }
        agg.precision_macro += r.precision_macro;
        agg.recall_macro += r.recall_macro;
        agg.f1_macro += r.f1_macro;
        agg.precision_micro += r.precision_micro;
        agg.recall_micro += r.recall_micro;
        agg.f1_micro += r.f1_micro;
        agg.g_mean += r.g_mean;
    }
    const double n = double(per_subject.size());
    agg.precision_macro /= n;
    agg.recall_macro /= n;
    agg.f1_macro /= n;
    agg.precision_micro /= n;
    agg.recall_micro /= n;
    agg.f1_micro /= n;
    agg.g_mean /= n;
    return agg;
}

namespace {

// Splits a CSV line on commas; fields are trimmed of surrounding whitespace
// (the format has no quoting).
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

bool parse_int(const std::string& s, int& out) {
    if (s.empty()) return false;
    size_t pos = 0;
    try {
        out = std::stoi(s, &pos);
    } catch (const std::exception&) {
        return false;
    }
    return pos == s.size();
}

} // namespace

LabeledPredictions read_predictions_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path.string());

    LabeledPredictions data;
    std::string line;
    size_t row = 0;
    int max_label = -1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields = split_csv(line);
        if (fields.size() != 3)
            throw MalformedRow("predictions row " + std::to_string(row) +
                               ": expected 3 columns, got " +
                               std::to_string(fields.size()));
        int t, p;
        if (!parse_int(fields[1], t) || !parse_int(fields[2], p)) {
            // Non-numeric labels on the first row are a header.
            if (row == 1) continue;
            throw MalformedRow("predictions row " + std::to_string(row) +
                               ": non-integer label");
        }
        if (t < 0 || p < 0)
            throw MalformedRow("predictions row " + std::to_string(row) +
                               ": negative label");
        data.subject_ids.push_back(fields[0]);
        data.true_labels.push_back(t);
        data.predicted_labels.push_back(p);
        max_label = std::max(max_label, std::max(t, p));
    }
    if (data.true_labels.empty())
        throw EmptyInput("predictions file has no samples: " + path.string());
    data.num_classes = max_label + 1;
    return data;
}

namespace {

std::string fmt_metric(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void append_row(std::string& out, const std::string& name,
                const MetricsReport& r) {
    out += name;
    for (double v : {r.precision_macro, r.recall_macro, r.f1_macro,
                     r.precision_micro, r.recall_micro, r.f1_micro, r.g_mean})
        out += "," + fmt_metric(v);
    out += "\n";
}

} // namespace

void write_metrics_csv(const std::filesystem::path& path,
                       const std::vector<std::string>& subjects,
                       const std::vector<MetricsReport>& reports,
                       const MetricsReport& aggregate) {
    if (subjects.size() != reports.size())
        throw DimensionMismatch("write_metrics_csv: subject/report mismatch");
    std::string out =
        "subject,precision_macro,recall_macro,f1_macro,"
        "precision_micro,recall_micro,f1_micro,g_mean\n";
    for (size_t i = 0; i < subjects.size(); ++i)
        append_row(out, subjects[i], reports[i]);
    append_row(out, "AGGREGATE", aggregate);
    write_file_atomic(path, out);
}

} // namespace faceflow
