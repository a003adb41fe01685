#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sia::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::vector<std::string> families;
    std::vector<std::pair<int, int>> grid;
    double tol = 1e-12;
    int trials = 20;
    std::uint64_t seed = 20240611;
    int trajectories = 10;
    double horizon = 10;
    int samples = 201;
    double drift_bound = 1e-8;
    int rank_points = 20;
    bool oracle = true;
    /// Output directory; empty writes JSON to stdout only.
    std::string out;
    std::vector<std::string> formats{"json"};
    std::string perturb;
    /// Worker threads; 0 picks the hardware concurrency.
    int jobs = 0;

    RunConfig();
};

/// Flat `key = value` text; `#` starts a comment. Throws ConfigError with
/// "origin:line: message".
RunConfig parse_config(std::string_view text, std::string_view origin, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

/// Applies one key; shared by the file parser and command-line overrides.
void apply_setting(RunConfig& c, std::string_view key, std::string_view value);

/// Throws ConfigError for unknown families, non-coprime or non-positive
/// pairs, tol outside (0, 1e-4], and unknown formats.
void validate(const RunConfig& c);

std::vector<std::pair<int, int>> parse_grid(std::string_view text);

}  // namespace sia::cli
