#include "cqlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "cqlab/errors.hpp"
#include "cqlab/lvalue_cache.hpp"

namespace cqlab {

namespace {

std::string x_label(double X) {
    // Integral sweep points print without a fractional part.
    if (X == std::floor(X) && X < 1e18) return std::to_string(static_cast<unsigned long long>(X));
    return format_double(X);
}

nlohmann::ordered_json optional_json(const std::optional<double>& v) {
    if (!v || !std::isfinite(*v)) return nullptr;
    return *v;
}

std::string optional_csv(const std::optional<double>& v) {
    if (!v || !std::isfinite(*v)) return "";
    return format_double(*v);
}

}  // namespace

std::optional<double> ReportRow::ratio() const {
    if (!predicted || *predicted == 0.0) return std::nullopt;
    return empirical.real() / *predicted;
}

std::string MomentReport::file_stem() const {
    double xmax = 0.0;
    for (const auto& r : rows) xmax = std::max(xmax, r.X);
    return experiment + "_" + std::string(to_string(family)) + "_" + x_label(xmax);
}

nlohmann::ordered_json MomentReport::to_json() const {
    nlohmann::ordered_json j;
    j["experiment"] = experiment;
    j["family"] = std::string(to_string(family));
    j["config"] = config;
    auto xs = nlohmann::ordered_json::array();
    auto params = nlohmann::ordered_json::array();
    auto emp = nlohmann::ordered_json::array();
    auto emp_im = nlohmann::ordered_json::array();
    auto pred = nlohmann::ordered_json::array();
    auto pred_err = nlohmann::ordered_json::array();
    auto ratio = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        xs.push_back(r.X);
        params.push_back(r.parameter);
        emp.push_back(r.empirical.real());
        emp_im.push_back(r.empirical.imag());
        pred.push_back(optional_json(r.predicted));
        pred_err.push_back(optional_json(r.predicted_error));
        ratio.push_back(optional_json(r.ratio()));
    }
    j["X_values"] = xs;
    j["parameters"] = params;
    j["empirical"] = emp;
    j["empirical_imag"] = emp_im;
    j["predicted"] = pred;
    j["predicted_error"] = pred_err;
    j["ratio"] = ratio;
    j["notes"] = notes;
    j["details"] = details;
    return j;
}

std::string MomentReport::json_text() const { return to_json().dump(2) + "\n"; }

std::string MomentReport::csv_text() const {
    std::string out = "X,parameter,empirical_re,empirical_im,predicted,predicted_error,ratio\n";
    for (const auto& r : rows) {
        out += x_label(r.X);
        out += ',';
        out += r.parameter;
        out += ',';
        out += format_double(r.empirical.real());
        out += ',';
        out += format_double(r.empirical.imag());
        out += ',';
        out += optional_csv(r.predicted);
        out += ',';
        out += optional_csv(r.predicted_error);
        out += ',';
        out += optional_csv(r.ratio());
        out += '\n';
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    std::error_code ec;
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IOFailure("cannot write " + tmp);
        out << text;
        out.flush();
        if (!out) throw IOFailure("cannot write " + tmp);
    }
    std::filesystem::rename(tmp, p, ec);
    if (ec) throw IOFailure("cannot write " + path);
}

void write_report(const MomentReport& report, const std::string& dir) {
    const auto base = (std::filesystem::path(dir) / report.file_stem()).string();
    write_text_file(base + ".json", report.json_text());
    write_text_file(base + ".csv", report.csv_text());
}

}  // namespace cqlab
