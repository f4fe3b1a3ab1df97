#pragma once

/// @file sim.hpp
/// @brief Run orchestration and the experiment drivers behind the CLI.

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "helical/config.hpp"
#include "helical/dynamics.hpp"
#include "helical/elliptic.hpp"

namespace helical {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

bool all_passed(std::span<const CheckResult> checks);

/// Initial vorticity of a config: the preset, mollified when
/// init.mollify_eps > 0.
ScalarField2D initial_vorticity(const SimConfig& config, std::shared_ptr<const GridDomain> domain);

using StepObserver = std::function<void(const SimState&, const StepReport&)>;

/// Takes `steps` steps of size dt, calling `observer` after each one.
SimState evolve(const DiscreteOperator& op, SimState state, double dt, int steps,
                const ForcingSpec& forcing, const SolverSettings& solver,
                const StepObserver& observer = {});

struct RunManifest {
    std::string version;
    std::string config_text;
    double wall_clock_seconds = 0.0;
    std::filesystem::path directory;
    std::vector<std::string> files;
    std::vector<CheckResult> checks;
    std::vector<std::string> warnings;
    /// Set when a module failed; `failure_step` is the step being taken.
    std::string failure;
    int failure_step = -1;

    bool passed() const { return failure.empty() && all_passed(checks); }
};

/// Full run: writes config.copy, diagnostics.csv, solver_log.csv,
/// fields/step_%06d.{csv,bin,json} and, last, manifest.json (atomically).
RunManifest run(const SimConfig& config, const std::filesystem::path& out_dir);

struct ConvergenceRow {
    int n = 0;
    double elliptic_error = 0.0;
    double elliptic_order = 0.0;  // 0 on the first level
    double steady_error = 0.0;
    double steady_order = 0.0;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    std::vector<CheckResult> checks;
};

/// Manufactured elliptic solution psi = R^2 - r^2 (error over r <= 0.8 R)
/// and radial-bump steadiness at dt / h fixed to the config's ratio.
/// Throws std::invalid_argument for fewer than three levels.
ConvergenceReport convergence(const SimConfig& config, std::span<const int> levels,
                              bool with_transport = true);

struct KappaRow {
    double kappa = 0.0;
    /// max |psi_H - psi_P| / max |psi_P| at t_end (absolute when psi_P = 0).
    double psi_difference = 0.0;
    double centroid_distance = 0.0;
};

struct KappaReport {
    std::vector<KappaRow> rows;
    std::vector<CheckResult> checks;
};

inline constexpr double kDegenerateKappas[] = {1.0, 10.0, 1e3, 1e6};

/// Runs the planar reference (five-point Laplacian, same transport) and the
/// helical solver for each kappa with the config's data.
KappaReport degenerate_kappa(const SimConfig& config,
                             std::span<const double> kappas = kDegenerateKappas);

struct StabilityRow {
    double delta = 0.0;
    /// ||psi_1 - psi_2||_h at t_end.
    double difference = 0.0;
};

struct StabilityReport {
    std::vector<StabilityRow> rows;
    std::vector<CheckResult> checks;
    /// Set when the base data is discontinuous, outside the smooth regime.
    bool rough_base = false;
};

/// Smooth perturbation shape used by the stability experiment.
ScalarField2D stability_perturbation(std::shared_ptr<const GridDomain> domain);

StabilityReport stability(const SimConfig& config, std::span<const double> deltas);

struct SampleReport {
    std::size_t samples = 0;
    /// max |u . xi| / max(1, |u| |xi|) over the samples.
    double max_orthogonality = 0.0;
    std::vector<CheckResult> checks;
};

/// Writes x,y,z,ux,uy,uz,wx,wy,wz rows for every interior node of the slice
/// at z = k * 2 pi kappa / z_count, k < z_count. Samples the initial state,
/// or the state at t_end when `evolve_first`.
SampleReport sample3d(const SimConfig& config, int z_count, std::ostream& csv,
                      bool evolve_first = false);

}  // namespace helical
