#pragma once

/// @file config.hpp
/// @brief Run configuration as flat `key = value` text with dotted keys.
///
///     # comment
///     domain.radius = 1
///     domain.n = 128
///     init.preset = gaussian-vortex
///
/// Every key is optional and falls back to the defaults below; unknown and
/// repeated keys are errors. serialize() writes every key, and parsing its
/// output gives back an identical SimConfig.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "helical/dynamics.hpp"
#include "helical/initial_data.hpp"

namespace helical {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SimConfig {
    struct Domain {
        double radius = 1.0;
        int n = 128;
        bool operator==(const Domain&) const = default;
    } domain;
    struct Helix {
        double kappa = 1.0;
        bool operator==(const Helix&) const = default;
    } helix;
    struct Time {
        double dt = 1.0 / 256.0;
        double t_end = 1.0;
        int output_stride = 64;
        bool operator==(const Time&) const = default;
    } time;
    struct Init {
        std::string preset = "gaussian-vortex";
        double amplitude = 1.0;
        double center_x = 0.3;
        double center_y = 0.0;
        double width = 0.2;
        double radius = 0.3;
        /// 0 disables mollification.
        double mollify_eps = 0.0;
        bool operator==(const Init&) const = default;
    } init;
    struct Forcing {
        /// zero | constant | gaussian
        std::string preset = "zero";
        double amplitude = 0.0;
        double center_x = 0.0;
        double center_y = 0.0;
        double width = 0.2;
        bool operator==(const Forcing&) const = default;
    } forcing;
    struct Solver {
        double tol = 1e-10;
        int max_iter = 20000;
        bool operator==(const Solver&) const = default;
    } solver;
    struct Output {
        std::string directory = "out";
        /// Subset of {csv, bin}.
        std::vector<std::string> formats = {"csv", "bin"};
        bool operator==(const Output&) const = default;
    } output;
    struct Run {
        std::uint64_t seed = 20240531;
        bool operator==(const Run&) const = default;
    } run;

    bool operator==(const SimConfig&) const = default;

    /// Number of steps t_end / dt (validated to be an integer).
    int step_count() const;
};

/// Parses and validates. Throws ConfigError naming the line.
SimConfig parse_config(std::string_view text);
SimConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const SimConfig& config);

/// Throws ConfigError on the first invalid field.
void validate(const SimConfig& config);

InitPreset init_preset(const SimConfig& config);
ForcingSpec forcing_spec(const SimConfig& config);
SolverSettings solver_settings(const SimConfig& config);

}  // namespace helical
