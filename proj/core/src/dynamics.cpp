#include "helical/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace helical {

VelocityField transport_velocity(const ScalarField2D& psi) {
    FieldGradient g = central_gradient(psi);
    g.dy *= -1.0;
    return {std::move(g.dy), std::move(g.dx)};
}

double ForcingSpec::sup_norm(const GridDomain& domain, double t) const {
    if (!fn) return 0.0;
    double m = 0.0;
    for (const std::size_t k : domain.interior_nodes()) {
        m = std::max(m, std::abs(fn(domain.node_x(k), domain.node_y(k), t)));
    }
    return m;
}

ForcingSpec ForcingSpec::zero() { return {}; }

ForcingSpec ForcingSpec::constant(double c) {
    return {"constant", [c](double, double, double) { return c; }};
}

ForcingSpec ForcingSpec::gaussian(double amplitude, double cx, double cy, double width) {
    if (!(width > 0.0)) {
        throw std::invalid_argument("ForcingSpec::gaussian: width must be positive");
    }
    return {"gaussian", [=](double x, double y, double) {
                const double dx = x - cx;
                const double dy = y - cy;
                return amplitude * std::exp(-(dx * dx + dy * dy) / (width * width));
            }};
}

namespace {

SolveResult checked_solve(const DiscreteOperator& op, const ScalarField2D& omega,
                          const SolverSettings& solver, const ScalarField2D* guess,
                          const char* stage) {
    SolveResult r = solve(op, omega, solver.tol, solver.max_iter, guess);
    if (!r.report.converged) {
        throw SolverFailure(std::string("elliptic solve did not converge (") + stage +
                                "), residual " + std::to_string(r.report.residual) + " after " +
                                std::to_string(r.report.iterations) + " iterations",
                            r.report);
    }
    return r;
}

double max_speed(const VelocityField& v) {
    const GridDomain& d = v.vx.domain();
    double m = 0.0;
    for (const std::size_t k : d.interior_nodes()) m = std::max(m, std::hypot(v.vx[k], v.vy[k]));
    return m;
}

// Backward midpoint trace from every interior node, then interpolation of
// omega at the foot plus the half-step source.
ScalarField2D advect(const ScalarField2D& omega, const VelocityField& v, double dt, double t,
                     const ForcingSpec& forcing) {
    const GridDomain& d = omega.domain();
    ScalarField2D out(omega.domain_ptr());
    const double t_half = t + 0.5 * dt;
    for (const std::size_t k : d.interior_nodes()) {
        const double x = d.node_x(k);
        const double y = d.node_y(k);
        const double xm = x - 0.5 * dt * v.vx[k];
        const double ym = y - 0.5 * dt * v.vy[k];
        const double xf = x - dt * interpolate_bilinear(v.vx, xm, ym);
        const double yf = y - dt * interpolate_bilinear(v.vy, xm, ym);
        double value = d.contains(xf, yf) ? interpolate_cubic_monotone(omega, xf, yf) : 0.0;
        if (!forcing.is_zero()) value += dt * forcing(x, y, t_half);
        out[k] = value;
    }
    return out;
}

}  // namespace

SimState initial_state(const DiscreteOperator& op, const ScalarField2D& omega0,
                       const SolverSettings& solver, SolveReport* report) {
    ScalarField2D omega = omega0;
    omega.zero_outside();
    SolveResult r = checked_solve(op, omega, solver, nullptr, "initial");
    if (report != nullptr) *report = r.report;
    return {0.0, 0, std::move(omega), std::move(r.psi)};
}

SimState step(const SimState& state, double dt, const ForcingSpec& forcing,
              const DiscreteOperator& op, const SolverSettings& solver, StepReport* report) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("step: dt must be positive");
    }
    const double h = op.domain().h();
    const VelocityField v0 = transport_velocity(extend_by_ghosts(state.psi));

    const ScalarField2D omega_pred = advect(state.omega, v0, dt, state.t, forcing);
    // the predictor only feeds the tracing velocity
    const SolverSettings loose{std::max(solver.tol, kPredictorTolerance), solver.max_iter};
    const SolveResult pred = checked_solve(op, omega_pred, loose, &state.psi, "predictor");
    VelocityField v_half = transport_velocity(extend_by_ghosts(pred.psi));
    v_half.vx += v0.vx;
    v_half.vy += v0.vy;
    v_half.vx *= 0.5;
    v_half.vy *= 0.5;

    ScalarField2D omega_next = advect(state.omega, v_half, dt, state.t, forcing);
    SolveResult corr = checked_solve(op, omega_next, solver, &pred.psi, "corrector");

    if (report != nullptr) {
        report->cfl = std::max(max_speed(v0), max_speed(v_half)) * dt / h;
        report->cfl_warning = report->cfl > kCflWarning;
        report->cg_iterations = pred.report.iterations + corr.report.iterations;
        report->residual = corr.report.residual;
    }
    return {state.t + dt, state.step + 1, std::move(omega_next), std::move(corr.psi)};
}

double consistency_residual(const DiscreteOperator& op, const SimState& state) {
    const ScalarField2D a_psi = op.apply(state.psi);
    const double scale = sup_norm(state.omega);
    if (scale == 0.0) return sup_norm(a_psi);
    return sup_norm(a_psi - state.omega) / scale;
}

bool range_preserved(const ScalarField2D& before, const ScalarField2D& after) {
    return after.min() >= before.min() && after.max() <= before.max();
}

VorticityBoundMonitor::VorticityBoundMonitor(const ForcingSpec& forcing, double dt)
    : forcing_(forcing), dt_(dt) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("VorticityBoundMonitor: dt must be positive");
    }
}

void VorticityBoundMonitor::observe(const SimState& state) {
    const double sup = sup_norm(state.omega);
    if (!started_) {
        started_ = true;
        initial_sup_ = sup;
        last_t_ = state.t;
        report_.bound = sup;
        report_.observed = sup;
        return;
    }
    if (!forcing_.is_zero()) {
        const GridDomain& d = state.omega.domain();
        // one midpoint sample per elapsed step
        const int steps = static_cast<int>(std::lround((state.t - last_t_) / dt_));
        for (int m = 0; m < steps; ++m) {
            forcing_integral_ += dt_ * forcing_.sup_norm(d, last_t_ + (m + 0.5) * dt_);
        }
    }
    last_t_ = state.t;
    const double bound = initial_sup_ + (forcing_.is_zero() ? 0.0 : 1.1 * forcing_integral_);
    if (report_.passed && sup > bound) {
        report_.passed = false;
        report_.offending_step = state.step;
        report_.bound = bound;
        report_.observed = sup;
    } else if (report_.passed) {
        report_.bound = bound;
        report_.observed = std::max(report_.observed, sup);
    }
}

BoundCheckReport vorticity_bound_check(std::span<const SimState> history,
                                       const ForcingSpec& forcing, double dt) {
    VorticityBoundMonitor monitor(forcing, dt);
    for (const SimState& s : history) monitor.observe(s);
    return monitor.report();
}

double weak_residual(std::span<const SimState> trajectory, const DiscreteOperator& op,
                     const TestFunction& phi, const ForcingSpec& forcing) {
    if (trajectory.empty()) return 0.0;
    const GridDomain& d = op.domain();
    const double area = d.h() * d.h();
    const auto interior = d.interior_nodes();

    double total = 0.0;
    const ScalarField2D w0 = op.apply(trajectory.front().psi);
    for (const std::size_t k : interior) {
        total -= area * w0[k] * phi.phi(d.node_x(k), d.node_y(k), trajectory.front().t);
    }

    ScalarField2D w_prev = w0;
    for (std::size_t s = 0; s + 1 < trajectory.size(); ++s) {
        const SimState& a = trajectory[s];
        const SimState& b = trajectory[s + 1];
        const double dt = b.t - a.t;
        const double tm = a.t + 0.5 * dt;
        ScalarField2D w_next = op.apply(b.psi);
        ScalarField2D w_mid = 0.5 * (w_prev + w_next);
        ScalarField2D psi_mid = 0.5 * (a.psi + b.psi);
        const FieldGradient g = central_gradient(extend_by_ghosts(psi_mid));
        double interval = 0.0;
        for (const std::size_t k : interior) {
            const double x = d.node_x(k);
            const double y = d.node_y(k);
            const double w = w_mid[k];
            interval += -w * phi.phi_t(x, y, tm) + g.dy[k] * w * phi.phi_x(x, y, tm) -
                        g.dx[k] * w * phi.phi_y(x, y, tm) - forcing(x, y, tm) * phi.phi(x, y, tm);
        }
        total += area * dt * interval;
        w_prev = std::move(w_next);
    }
    return total;
}

Centroid centroid(const ScalarField2D& omega) {
    const GridDomain& d = omega.domain();
    double sum = 0.0;
    double sx = 0.0;
    double sy = 0.0;
    for (const std::size_t k : d.interior_nodes()) {
        sum += omega[k];
        sx += d.node_x(k) * omega[k];
        sy += d.node_y(k) * omega[k];
    }
    if (sum == 0.0) {
        throw std::domain_error("centroid: zero total circulation");
    }
    return {sx / sum, sy / sum};
}

Diagnostics diagnostics(const SimState& state, const DiscreteOperator& op,
                        const StepReport& report) {
    Diagnostics out;
    out.t = state.t;
    out.omega_min = state.omega.min();
    out.omega_max = state.omega.max();
    out.circulation = integrate(state.omega);
    out.energy = energy(op, state.psi);
    out.cfl = report.cfl;
    out.cg_iterations = report.cg_iterations;
    return out;
}

}  // namespace helical
