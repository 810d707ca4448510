#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "geodev/applications.hpp"

namespace geodev {

// Settings shared by every experiment; pushed into each SimConfig.
struct CommonConfig {
    std::uint64_t seed = 0;
    Scheme scheme = Scheme::Developed;
    bool clamp_eigenvalues = false;
    double pd_floor = 1e-10;
    double fd_scale = 1e-5;
    unsigned threads = 0;
};

struct RunConfig {
    CommonConfig common;
    WellExperimentConfig well;
    DuffingExperimentConfig duffing;
    OptimizerConfig optimize;
    // Also run the plain Langevin comparator in `optimize`.
    bool optimize_euclidean = true;

    // Copies the common block into the per-experiment SimConfigs.
    void apply_common();
};

// Parses a config document. Absent blocks and keys keep their defaults;
// unknown keys and type mismatches throw ConfigError naming the field.
RunConfig parse_config(const nlohmann::json& doc);
// Reads and parses a file; a missing or unreadable file is a ConfigError.
RunConfig load_config(const std::filesystem::path& path);

// Fully materialized document; parse_config(to_json(c)) reproduces c.
nlohmann::json to_json(const RunConfig& cfg);

// Runs validate() of the named block (all blocks when empty), rethrowing as
// ConfigError with the block name prefixed.
void validate_config(const RunConfig& cfg, std::string_view block = {});

}  // namespace geodev
