#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>

#include "geodev/sde.hpp"

namespace geodev {

inline constexpr std::string_view kVersion = "0.1.0";

enum class ExitCode : int {
    Ok = 0,
    Failure = 1,  // failed invariant check or unexpected runtime error
    ConfigError = 2,
    AllDiverged = 3,
};

struct CommandOptions {
    // Defaults are used for every field when no config file is given.
    std::optional<std::filesystem::path> config;
    std::filesystem::path out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<Scheme> scheme;
    // Test hook for `check`; see CheckOptions.
    double gradient_perturbation = 0.0;
};

ExitCode cmd_well(const CommandOptions& options);
ExitCode cmd_duffing(const CommandOptions& options);
ExitCode cmd_optimize(const CommandOptions& options);
ExitCode cmd_check(const CommandOptions& options);

// Dispatches on "well", "duffing", "optimize" or "check".
ExitCode run_command(std::string_view command, const CommandOptions& options);

}  // namespace geodev
