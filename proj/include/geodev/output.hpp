#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "geodev/sde.hpp"

namespace geodev {

// Shortest decimal string that parses back to the same double; "nan",
// "inf" and "-inf" for non-finite values.
std::string format_double(double v);

// Comma-separated rows with a header, '\n' line endings, written as bytes so
// the output is identical on every platform.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

    CsvWriter& operator<<(double v);
    CsvWriter& operator<<(std::uint64_t v);
    void end_row();
    void close();

private:
    void separator();

    std::ofstream out_;
    std::filesystem::path path_;
    std::string line_;
    std::size_t columns_ = 0;
    std::size_t filled_ = 0;
};

// Header x1..xd prefixed by the given leading columns.
std::vector<std::string> state_header(std::vector<std::string> leading, int dim);

// Rows (t, member, x1..xd), member-major.
void write_ensemble_csv(const std::filesystem::path& path, const EnsembleResult& run);

// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

nlohmann::json series_json(const std::vector<double>& values);
nlohmann::json vector_to_json(const Vector& v);

}  // namespace geodev
