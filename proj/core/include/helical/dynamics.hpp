#pragma once

/// @file dynamics.hpp
/// @brief Transport of the scalar vorticity,
///
///     omega_t - psi_y omega_x + psi_x omega_y = f,   L_H psi = omega,
///
/// by a semi-Lagrangian scheme, with the checks that go with it.
///
/// One step traces the characteristics of v = (-psi_y, psi_x) backward from
/// every interior node with the midpoint rule, interpolates the old vorticity
/// at the foot with range-clamped cubic interpolation and adds dt f at the
/// half step. The first pass uses v(psi^n); the stream function of that
/// predictor gives v*, and the second pass traces with (v^n + v*) / 2. Feet
/// outside the domain read omega = 0.

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "helical/elliptic.hpp"
#include "helical/grid.hpp"

namespace helical {

/// The advecting field (-psi_y, psi_x). Not the physical in-plane velocity.
struct VelocityField {
    ScalarField2D vx;
    ScalarField2D vy;
};

/// Central differences of the stored psi (see central_gradient). For a
/// stream function with psi = 0 on the wall pass extend_by_ghosts(psi).
VelocityField transport_velocity(const ScalarField2D& psi);

/// Curl forcing f(x, y, t). An empty callable means f = 0.
struct ForcingSpec {
    std::string name = "zero";
    std::function<double(double, double, double)> fn;

    bool is_zero() const { return !fn; }
    double operator()(double x, double y, double t) const { return fn ? fn(x, y, t) : 0.0; }
    /// Max |f(., t)| over interior nodes.
    double sup_norm(const GridDomain& domain, double t) const;

    static ForcingSpec zero();
    static ForcingSpec constant(double c);
    /// a exp(-|x - c|^2 / w^2)
    static ForcingSpec gaussian(double amplitude, double cx, double cy, double width);
};

struct SolverSettings {
    double tol = kDefaultSolveTolerance;
    int max_iter = 20000;
};

/// Thrown when an elliptic solve inside the time loop does not converge.
class SolverFailure : public std::runtime_error {
public:
    SolverFailure(const std::string& what, SolveReport report)
        : std::runtime_error(what), report_(report) {}
    const SolveReport& report() const { return report_; }

private:
    SolveReport report_;
};

struct SimState {
    double t = 0.0;
    int step = 0;
    ScalarField2D omega;
    ScalarField2D psi;
};

/// Solves for psi and returns the state at t = 0. Throws SolverFailure.
SimState initial_state(const DiscreteOperator& op, const ScalarField2D& omega0,
                       const SolverSettings& solver, SolveReport* report = nullptr);

inline constexpr double kCflWarning = 5.0;

/// Solver tolerance for the predictor stream function, which is only used
/// for the tracing velocity.
inline constexpr double kPredictorTolerance = 1e-7;

struct StepReport {
    double cfl = 0.0;
    bool cfl_warning = false;
    /// CG iterations summed over the predictor and corrector solves.
    int cg_iterations = 0;
    /// Relative residual of the final solve.
    double residual = 0.0;
};

/// Advances by dt. Throws std::invalid_argument for dt <= 0 and
/// SolverFailure when a solve does not converge.
SimState step(const SimState& state, double dt, const ForcingSpec& forcing,
              const DiscreteOperator& op, const SolverSettings& solver,
              StepReport* report = nullptr);

/// max |L_H psi - omega| / max |omega| (0 when omega = 0).
double consistency_residual(const DiscreteOperator& op, const SimState& state);

/// Range check for one f = 0 step: the new field stays within the old
/// [min, max], zero extension included. Exact comparison.
bool range_preserved(const ScalarField2D& before, const ScalarField2D& after);

struct BoundCheckReport {
    bool passed = true;
    /// First offending step, or -1.
    int offending_step = -1;
    double bound = 0.0;
    double observed = 0.0;
};

/// Streaming form of the L-infinity estimate
///     ||omega(t_k)|| <= ||omega_0|| + sum_{m<k} dt ||f(t_m + dt/2)||,
/// with 10% slack on the forcing integral and none when f = 0.
class VorticityBoundMonitor {
public:
    VorticityBoundMonitor(const ForcingSpec& forcing, double dt);

    void observe(const SimState& state);
    const BoundCheckReport& report() const { return report_; }

private:
    ForcingSpec forcing_;
    double dt_;
    bool started_ = false;
    double initial_sup_ = 0.0;
    double forcing_integral_ = 0.0;
    double last_t_ = 0.0;
    BoundCheckReport report_;
};

BoundCheckReport vorticity_bound_check(std::span<const SimState> history,
                                       const ForcingSpec& forcing, double dt);

/// Test function for the weak identity, with its first derivatives.
struct TestFunction {
    std::function<double(double, double, double)> phi;
    std::function<double(double, double, double)> phi_t;
    std::function<double(double, double, double)> phi_x;
    std::function<double(double, double, double)> phi_y;
};

/// Residual of the weak form over the stored trajectory (uniform dt):
///
///   - int w0 phi(0) - intint w phi_t + intint psi_y w phi_x
///   - intint psi_x w phi_y - intint f phi,
///
/// node sums in space and the midpoint rule in time (fields averaged over
/// each interval), with w = A psi. Zero for smooth solutions of the
/// transport equation.
double weak_residual(std::span<const SimState> trajectory, const DiscreteOperator& op,
                     const TestFunction& phi, const ForcingSpec& forcing);

struct Centroid {
    double x = 0.0;
    double y = 0.0;
};

/// Vorticity-weighted centre. Throws std::domain_error when the total
/// circulation vanishes.
Centroid centroid(const ScalarField2D& omega);

struct Diagnostics {
    double t = 0.0;
    double omega_min = 0.0;
    double omega_max = 0.0;
    double circulation = 0.0;
    double energy = 0.0;
    double cfl = 0.0;
    int cg_iterations = 0;
};

Diagnostics diagnostics(const SimState& state, const DiscreteOperator& op,
                        const StepReport& report);

}  // namespace helical
