#include "geodev/output.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "geodev/errors.hpp"

namespace geodev {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary | std::ios::trunc), path_(path), columns_(header.size()) {
    if (!out_) throw Error("cannot write " + path.string());
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out_ << ',';
        out_ << header[i];
    }
    out_ << '\n';
}

void CsvWriter::separator() {
    if (filled_ == columns_) throw std::logic_error("too many CSV fields in " + path_.string());
    if (filled_++) line_ += ',';
}

CsvWriter& CsvWriter::operator<<(double v) {
    separator();
    line_ += format_double(v);
    return *this;
}

CsvWriter& CsvWriter::operator<<(std::uint64_t v) {
    separator();
    line_ += std::to_string(v);
    return *this;
}

void CsvWriter::end_row() {
    if (filled_ != columns_) throw std::logic_error("short CSV row in " + path_.string());
    line_ += '\n';
    out_ << line_;
    line_.clear();
    filled_ = 0;
}

void CsvWriter::close() {
    out_.close();
    if (out_.fail()) throw Error("failed writing " + path_.string());
}

std::vector<std::string> state_header(std::vector<std::string> leading, int dim) {
    for (int i = 1; i <= dim; ++i) leading.push_back("x" + std::to_string(i));
    return leading;
}

void write_ensemble_csv(const std::filesystem::path& path, const EnsembleResult& run) {
    const int dim = run.states.empty() ? 0 : static_cast<int>(run.states.front().rows());
    CsvWriter csv(path, state_header({"t", "member"}, dim));
    for (std::size_t m = 0; m < run.states.size(); ++m) {
        const Matrix& path_m = run.states[m];
        for (std::size_t s = 0; s < run.times.size(); ++s) {
            csv << run.times[s] << static_cast<std::uint64_t>(m);
            for (int i = 0; i < dim; ++i) csv << path_m(i, static_cast<Eigen::Index>(s));
            csv.end_row();
        }
    }
    csv.close();
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << doc.dump(2) << '\n';
    out.close();
    if (out.fail()) throw Error("failed writing " + path.string());
}

nlohmann::json series_json(const std::vector<double>& values) {
    nlohmann::json out = nlohmann::json::array();
    for (double v : values) out.push_back(v);
    return out;
}

nlohmann::json vector_to_json(const Vector& v) {
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

}  // namespace geodev
