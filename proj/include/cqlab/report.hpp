#pragma once

// Experiment reports: one row per (X, parameter) with the empirical value,
// the predicted main term where one exists, and their ratio. Serialized to
// JSON and to a plot-ready CSV named <experiment>_<family>_<Xmax>.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cqlab/ring.hpp"

namespace cqlab {

struct ReportRow {
    double X = 0.0;
    std::string parameter;
    std::complex<double> empirical;
    std::optional<double> predicted;
    std::optional<double> predicted_error;

    std::optional<double> ratio() const;
};

struct MomentReport {
    std::string experiment;
    Family family = Family::Cubic;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    std::vector<ReportRow> rows;
    std::vector<std::string> notes;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();

    std::string file_stem() const;  // <experiment>_<family>_<largest X>
    nlohmann::ordered_json to_json() const;
    std::string json_text() const;
    std::string csv_text() const;
};

// Writes <dir>/<stem>.json and <dir>/<stem>.csv. Throws IOFailure.
void write_report(const MomentReport& report, const std::string& dir);

// Writes text to a file through a temporary and a rename. Throws IOFailure.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace cqlab
