#include "faceflow/run_config.hpp"

#include <cstdio>
#include <fstream>
#include <string>

#include "faceflow/errors.hpp"
#include "faceflow/flo_io.hpp"

namespace faceflow {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    size_t e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& value) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != value.size())
        throw MalformedRow("config key " + key + ": bad number '" + value +
                           "'");
    return v;
}

} // namespace

RunConfig parse_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path.string());

    RunConfig config;
    std::string line;
    size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw MalformedRow("config row " + std::to_string(row) +
                               ": expected key=value");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));

        if (key == "crop_offset") {
            double v = parse_real(key, value);
            config.crop_offset = int(v);
            if (v != double(config.crop_offset) || config.crop_offset < 0)
                throw MalformedRow("crop_offset must be a non-negative "
                                   "integer, got '" + value + "'");
        } else if (key == "huber_delta") {
            config.huber_delta = parse_real(key, value);
        } else if (key == "lambda1") {
            config.lambda1 = parse_real(key, value);
        } else if (key == "lambda2") {
            config.lambda2 = parse_real(key, value);
        } else if (key == "lambda3") {
            config.lambda3 = parse_real(key, value);
        } else if (key == "resample_method") {
            if (value == "piecewise-cubic")
                config.resample_method = ResampleMethod::kPiecewiseCubic;
            else if (value == "piecewise-linear")
                config.resample_method = ResampleMethod::kPiecewiseLinear;
            else
                throw MalformedRow("resample_method must be piecewise-cubic "
                                   "or piecewise-linear, got '" + value + "'");
        } else {
            throw MalformedRow("unknown config key '" + key + "'");
        }
    }

    if (config.huber_delta <= 0.0)
        throw MalformedRow("huber_delta must be positive");
    if (config.lambda1 < 0.0 || config.lambda2 < 0.0 || config.lambda3 < 0.0 ||
        config.lambda1 + config.lambda2 + config.lambda3 <= 0.0)
        throw MalformedRow("lambdas must be non-negative with positive sum");
    return config;
}

void write_run_config(const RunConfig& config,
                      const std::filesystem::path& path) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "crop_offset = %d\n"
                  "huber_delta = %.17g\n"
                  "lambda1 = %.17g\n"
                  "lambda2 = %.17g\n"
                  "lambda3 = %.17g\n"
                  "resample_method = %s\n",
                  config.crop_offset, config.huber_delta, config.lambda1,
                  config.lambda2, config.lambda3,
                  config.resample_method == ResampleMethod::kPiecewiseCubic
                      ? "piecewise-cubic"
                      : "piecewise-linear");
    write_file_atomic(path, buf);
}

} // namespace faceflow
