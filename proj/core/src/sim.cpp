#include "helical/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "helical/field_io.hpp"
#include "helical/initial_data.hpp"
#include "helical/planar.hpp"
#include "helical/reconstruction.hpp"
#include "helical/version.hpp"

namespace helical {

bool all_passed(std::span<const CheckResult> checks) {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

ScalarField2D initial_vorticity(const SimConfig& config, std::shared_ptr<const GridDomain> domain) {
    ScalarField2D omega = generate(init_preset(config), std::move(domain));
    if (config.init.mollify_eps > 0.0) {
        omega = mollify(omega, {config.init.mollify_eps});
    }
    return omega;
}

SimState evolve(const DiscreteOperator& op, SimState state, double dt, int steps,
                const ForcingSpec& forcing, const SolverSettings& solver,
                const StepObserver& observer) {
    for (int k = 0; k < steps; ++k) {
        StepReport report;
        state = step(state, dt, forcing, op, solver, &report);
        if (observer) observer(state, report);
    }
    return state;
}

namespace {

std::string fmt(double v) { return format_double(v); }

std::string step_name(int step) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "step_%06d", step);
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::out | std::ios::trunc);
    out << text;
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

void write_manifest(const RunManifest& m) {
    nlohmann::json checks = nlohmann::json::array();
    for (const CheckResult& c : m.checks) {
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    nlohmann::json j = {
        {"version", m.version},
        {"config", m.config_text},
        {"wall_clock_seconds", m.wall_clock_seconds},
        {"files", m.files},
        {"checks", checks},
        {"warnings", m.warnings},
        {"passed", m.passed()},
    };
    if (!m.failure.empty()) {
        j["failure"] = {{"step", m.failure_step}, {"message", m.failure}};
    }
    const std::filesystem::path final_path = m.directory / "manifest.json";
    const std::filesystem::path tmp = m.directory / "manifest.json.tmp";
    write_text(tmp, j.dump(2) + "\n");
    std::filesystem::rename(tmp, final_path);
}

class FieldWriter {
public:
    FieldWriter(const SimConfig& c, const std::filesystem::path& dir, RunManifest& m)
        : dir_(dir), manifest_(m), kappa_(c.helix.kappa) {
        for (const std::string& f : c.output.formats) {
            csv_ = csv_ || f == "csv";
            bin_ = bin_ || f == "bin";
        }
    }

    void dump(const SimState& s) {
        const std::string stem = step_name(s.step);
        if (csv_) {
            write_field_csv(s.omega, dir_ / (stem + ".csv"));
            manifest_.files.push_back("fields/" + stem + ".csv");
        }
        if (bin_) {
            write_field_raw(s.omega, {kappa_, s.t, "omega"}, dir_ / (stem + ".bin"));
            manifest_.files.push_back("fields/" + stem + ".bin");
            manifest_.files.push_back("fields/" + stem + ".json");
        }
    }

private:
    std::filesystem::path dir_;
    RunManifest& manifest_;
    double kappa_;
    bool csv_ = false;
    bool bin_ = false;
};

std::string diagnostics_row(const Diagnostics& d) {
    return fmt(d.t) + ',' + fmt(d.omega_min) + ',' + fmt(d.omega_max) + ',' + fmt(d.circulation) +
           ',' + fmt(d.energy) + ',' + fmt(d.cfl) + ',' + std::to_string(d.cg_iterations) + '\n';
}

bool all_finite(const ScalarField2D& f) {
    return std::all_of(f.values().begin(), f.values().end(), [](double v) { return std::isfinite(v); });
}

bool zero_off_interior(const ScalarField2D& f) {
    const GridDomain& d = f.domain();
    for (std::size_t k = 0; k < d.node_count(); ++k) {
        if (!d.is_interior(k) && f[k] != 0.0) return false;
    }
    return true;
}

}  // namespace

RunManifest run(const SimConfig& config, const std::filesystem::path& out_dir) {
    validate(config);
    const auto started = std::chrono::steady_clock::now();
    RunManifest m;
    m.version = kVersion;
    m.config_text = serialize_config(config);
    m.directory = out_dir;
    std::filesystem::create_directories(out_dir / "fields");
    write_text(out_dir / "config.copy", m.config_text);
    m.files.push_back("config.copy");

    std::ofstream diag(out_dir / "diagnostics.csv", std::ios::out | std::ios::trunc);
    std::ofstream solver_log(out_dir / "solver_log.csv", std::ios::out | std::ios::trunc);
    diag << "t,omega_min,omega_max,circulation,energy,cfl,cg_iterations\n";
    solver_log << "step,iterations,residual\n";
    m.files.push_back("diagnostics.csv");
    m.files.push_back("solver_log.csv");
    FieldWriter writer(config, out_dir / "fields", m);

    const HelixParams helix(config.helix.kappa);
    const ForcingSpec forcing = forcing_spec(config);
    const SolverSettings solver = solver_settings(config);
    const double dt = config.time.dt;
    const int steps = config.step_count();
    int current_step = 0;

    try {
        const auto domain = build_disk_domain(config.domain.radius, config.domain.n);
        const DiscreteOperator op = assemble(domain, helix);
        const ScalarField2D raw = generate(init_preset(config), domain);
        const ScalarField2D omega0 = initial_vorticity(config, domain);
        if (config.init.mollify_eps > 0.0) {
            const double before = sup_norm(raw);
            const double after = sup_norm(omega0);
            m.checks.push_back({"mollifier_contraction", after <= before + 1e-12,
                                "sup " + fmt(after) + " vs " + fmt(before)});
        }
        if (init_preset(config).is_rough() && config.init.mollify_eps == 0.0) {
            m.warnings.push_back("discontinuous initial vorticity without mollification");
        }

        SolveReport first;
        SimState state = initial_state(op, omega0, solver, &first);
        solver_log << "0," << first.iterations << ',' << fmt(first.residual) << '\n';
        StepReport zero_report;
        zero_report.cg_iterations = first.iterations;
        diag << diagnostics_row(diagnostics(state, op, zero_report));
        writer.dump(state);

        VorticityBoundMonitor monitor(forcing, dt);
        monitor.observe(state);
        bool range_ok = true;
        int range_fail = -1;
        bool finite = all_finite(state.omega) && all_finite(state.psi);
        double worst_consistency = consistency_residual(op, state);
        double max_cfl = 0.0;

        for (int k = 0; k < steps; ++k) {
            current_step = k + 1;
            StepReport report;
            SimState next = step(state, dt, forcing, op, solver, &report);
            if (forcing.is_zero() && range_ok && !range_preserved(state.omega, next.omega)) {
                range_ok = false;
                range_fail = next.step;
            }
            state = std::move(next);
            monitor.observe(state);
            max_cfl = std::max(max_cfl, report.cfl);
            finite = finite && all_finite(state.omega) && all_finite(state.psi);
            diag << diagnostics_row(diagnostics(state, op, report));
            solver_log << state.step << ',' << report.cg_iterations << ',' << fmt(report.residual)
                       << '\n';
            if (state.step % config.time.output_stride == 0 || state.step == steps) {
                worst_consistency = std::max(worst_consistency, consistency_residual(op, state));
                writer.dump(state);
            }
        }
        worst_consistency = std::max(worst_consistency, consistency_residual(op, state));

        m.checks.push_back({"solver_converged", true,
                            "every solve reached tol " + fmt(solver.tol)});
        m.checks.push_back({"consistency_residual", worst_consistency <= 10.0 * solver.tol,
                            "max |L_H psi - omega| / max |omega| = " + fmt(worst_consistency)});
        m.checks.push_back({"psi_zero_off_interior", zero_off_interior(state.psi), ""});
        m.checks.push_back({"finite_values", finite, ""});
        const BoundCheckReport& bound = monitor.report();
        m.checks.push_back({"vorticity_bound", bound.passed,
                            "observed " + fmt(bound.observed) + ", bound " + fmt(bound.bound) +
                                (bound.passed ? "" : ", step " + std::to_string(bound.offending_step))});
        if (forcing.is_zero()) {
            m.checks.push_back({"range_non_expanding", range_ok,
                                range_ok ? "" : "first violation at step " + std::to_string(range_fail)});
        }
        if (init_preset(config).kind == PresetKind::radial_bump && forcing.is_zero() &&
            config.init.mollify_eps == 0.0) {
            const double scale = sup_norm(omega0);
            const double err = scale > 0.0 ? sup_norm(state.omega - omega0) / scale : 0.0;
            m.checks.push_back({"radial_steadiness", err <= 1e-2,
                                "max |omega(T) - omega_0| / max |omega_0| = " + fmt(err)});
        }
        if (max_cfl > kCflWarning) {
            m.warnings.push_back("CFL number reached " + fmt(max_cfl));
        }
    } catch (const std::exception& e) {
        m.failure = e.what();
        m.failure_step = current_step;
        m.checks.push_back({"completed", false, e.what()});
    }
    diag.close();
    solver_log.close();
    m.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    m.files.push_back("manifest.json");
    write_manifest(m);
    return m;
}

namespace {

double order(double coarse_err, double fine_err, int coarse_n, int fine_n) {
    return std::log(coarse_err / fine_err) / std::log(static_cast<double>(fine_n) / coarse_n);
}

}  // namespace

ConvergenceReport convergence(const SimConfig& config, std::span<const int> levels,
                              bool with_transport) {
    validate(config);
    if (levels.size() < 3) {
        throw std::invalid_argument("convergence: need at least three levels");
    }
    const HelixParams helix(config.helix.kappa);
    const double k4 = helix.kappa_sq() * helix.kappa_sq();
    const double R = config.domain.radius;
    const SolverSettings solver = solver_settings(config);
    ConvergenceReport report;
    for (const int n : levels) {
        const auto domain = build_disk_domain(R, n);
        const DiscreteOperator op = assemble(domain, helix);
        ConvergenceRow row;
        row.n = n;

        const ScalarField2D omega = ScalarField2D::sample(domain, [&](double x, double y) {
            const double s = helix.kappa_sq() + x * x + y * y;
            return -4.0 * k4 / (s * s);
        });
        const SolveResult sol = solve(op, omega, solver.tol, solver.max_iter);
        if (!sol.report.converged) {
            throw SolverFailure("convergence: manufactured solve did not converge", sol.report);
        }
        for (const std::size_t k : domain->interior_nodes()) {
            const double x = domain->node_x(k);
            const double y = domain->node_y(k);
            const double r2 = x * x + y * y;
            if (r2 > 0.64 * R * R) continue;
            row.elliptic_error = std::max(row.elliptic_error, std::abs(sol.psi[k] - (R * R - r2)));
        }

        if (with_transport) {
            InitPreset bump = init_preset(config);
            bump.kind = PresetKind::radial_bump;
            const ScalarField2D omega0 = generate(bump, domain);
            const double dt = config.time.dt * config.domain.n / n;
            const int steps = static_cast<int>(std::llround(config.time.t_end / dt));
            const SimState start = initial_state(op, omega0, solver);
            const SimState end =
                evolve(op, start, dt, steps, ForcingSpec::zero(), solver);
            const double scale = sup_norm(omega0);
            row.steady_error = scale > 0.0 ? sup_norm(end.omega - omega0) / scale : 0.0;
        }
        if (!report.rows.empty()) {
            const ConvergenceRow& prev = report.rows.back();
            row.elliptic_order = order(prev.elliptic_error, row.elliptic_error, prev.n, n);
            if (with_transport) row.steady_order = order(prev.steady_error, row.steady_error, prev.n, n);
        }
        report.rows.push_back(row);
    }
    double min_order = report.rows[1].elliptic_order;
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        min_order = std::min(min_order, report.rows[i].elliptic_order);
    }
    report.checks.push_back({"elliptic_order", min_order >= 1.8,
                             "min observed order " + fmt(min_order) + " (need >= 1.8)"});
    if (with_transport) {
        bool decreasing = true;
        for (std::size_t i = 1; i < report.rows.size(); ++i) {
            decreasing = decreasing && report.rows[i].steady_error < report.rows[i - 1].steady_error;
        }
        report.checks.push_back({"steadiness_decreasing", decreasing, ""});
    }
    return report;
}

KappaReport degenerate_kappa(const SimConfig& config, std::span<const double> kappas) {
    validate(config);
    const auto domain = build_disk_domain(config.domain.radius, config.domain.n);
    const ForcingSpec forcing = forcing_spec(config);
    const SolverSettings solver = solver_settings(config);
    const ScalarField2D omega0 = initial_vorticity(config, domain);
    const int steps = config.step_count();

    auto run_with = [&](const DiscreteOperator& op) {
        return evolve(op, initial_state(op, omega0, solver), config.time.dt, steps, forcing, solver);
    };
    auto safe_centroid = [](const ScalarField2D& w) -> std::optional<Centroid> {
        if (integrate(w) == 0.0) return std::nullopt;
        return centroid(w);
    };

    const SimState planar = run_with(assemble_planar_poisson(domain));
    const double scale = sup_norm(planar.psi);
    const auto planar_c = safe_centroid(planar.omega);

    KappaReport report;
    for (const double kappa : kappas) {
        const SimState helical = run_with(assemble(domain, HelixParams(kappa)));
        KappaRow row;
        row.kappa = kappa;
        const double diff = sup_norm(helical.psi - planar.psi);
        row.psi_difference = scale > 0.0 ? diff / scale : diff;
        const auto c = safe_centroid(helical.omega);
        if (c && planar_c) row.centroid_distance = std::hypot(c->x - planar_c->x, c->y - planar_c->y);
        report.rows.push_back(row);
    }
    for (const KappaRow& row : report.rows) {
        if (row.kappa == 1e6) {
            report.checks.push_back({"kappa_1e6_matches_planar", row.psi_difference <= 1e-4,
                                     "relative psi difference " + fmt(row.psi_difference)});
        }
    }
    bool monotone = true;
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        monotone = monotone && report.rows[i].psi_difference <= report.rows[i - 1].psi_difference;
    }
    if (report.rows.size() >= 2) {
        const double first = report.rows.front().psi_difference;
        const double last = report.rows.back().psi_difference;
        monotone = monotone && (first > last || (first == 0.0 && last == 0.0));
    }
    report.checks.push_back({"monotone_in_kappa", monotone, ""});
    return report;
}

ScalarField2D stability_perturbation(std::shared_ptr<const GridDomain> domain) {
    const double R = domain->radius();
    const double cx = -0.25 * R;
    const double cy = 0.2 * R;
    const double w2 = 0.0625 * R * R;
    return ScalarField2D::sample(std::move(domain), [=](double x, double y) {
        const double dx = x - cx;
        const double dy = y - cy;
        return std::exp(-(dx * dx + dy * dy) / w2);
    });
}

StabilityReport stability(const SimConfig& config, std::span<const double> deltas) {
    validate(config);
    const auto domain = build_disk_domain(config.domain.radius, config.domain.n);
    const HelixParams helix(config.helix.kappa);
    const DiscreteOperator op = assemble(domain, helix);
    const ForcingSpec forcing = forcing_spec(config);
    const SolverSettings solver = solver_settings(config);
    const int steps = config.step_count();
    const ScalarField2D base = initial_vorticity(config, domain);
    const ScalarField2D g = stability_perturbation(domain);

    auto run_from = [&](const ScalarField2D& omega0) {
        return evolve(op, initial_state(op, omega0, solver), config.time.dt, steps, forcing, solver);
    };

    StabilityReport report;
    report.rough_base = init_preset(config).is_rough() && config.init.mollify_eps == 0.0;
    const SimState reference = run_from(base);
    for (const double delta : deltas) {
        const SimState perturbed = delta == 0.0 ? run_from(base) : run_from(base + delta * g);
        const ScalarField2D d = perturbed.psi - reference.psi;
        StabilityRow row{delta, std::sqrt(std::max(helical_inner(d, d, helix), 0.0))};
        if (delta == 0.0) {
            const bool identical =
                std::equal(perturbed.psi.values().begin(), perturbed.psi.values().end(),
                           reference.psi.values().begin()) &&
                std::equal(perturbed.omega.values().begin(), perturbed.omega.values().end(),
                           reference.omega.values().begin());
            report.checks.push_back({"zero_delta_bit_identical", identical, ""});
        }
        report.rows.push_back(row);
    }
    std::vector<StabilityRow> positive;
    for (const StabilityRow& r : report.rows) {
        if (r.delta > 0.0) positive.push_back(r);
    }
    std::sort(positive.begin(), positive.end(),
              [](const StabilityRow& a, const StabilityRow& b) { return a.delta > b.delta; });
    bool monotone = true;
    for (std::size_t i = 1; i < positive.size(); ++i) {
        monotone = monotone && positive[i].difference < positive[i - 1].difference;
    }
    report.checks.push_back({"monotone_in_delta", monotone, ""});
    return report;
}

SampleReport sample3d(const SimConfig& config, int z_count, std::ostream& csv, bool evolve_first) {
    validate(config);
    if (z_count < 1) {
        throw std::invalid_argument("sample3d: z-count must be >= 1");
    }
    const auto domain = build_disk_domain(config.domain.radius, config.domain.n);
    const HelixParams helix(config.helix.kappa);
    const DiscreteOperator op = assemble(domain, helix);
    const SolverSettings solver = solver_settings(config);
    SimState state = initial_state(op, initial_vorticity(config, domain), solver);
    if (evolve_first) {
        state = evolve(op, std::move(state), config.time.dt, config.step_count(),
                       forcing_spec(config), solver);
    }
    const HelicalField3D velocity =
        HelicalField3D::from_velocity(velocity_from_psi(extend_by_ghosts(state.psi), helix), helix);
    const HelicalField3D vorticity = vorticity_3d(state.omega, helix);

    SampleReport report;
    csv << "x,y,z,ux,uy,uz,wx,wy,wz\n";
    const double period = 2.0 * std::numbers::pi * helix.kappa();
    for (int k = 0; k < z_count; ++k) {
        const double z = period * k / z_count;
        for (const std::size_t node : domain->interior_nodes()) {
            const Point3 p{domain->node_x(node), domain->node_y(node), z};
            const Vec3 u = velocity.eval(p);
            const Vec3 w = vorticity.eval(p);
            const Vec3 t = xi(helix, p);
            const double scaled = std::abs(u_xi(helix, p, u)) / std::max(1.0, norm(u) * norm(t));
            report.max_orthogonality = std::max(report.max_orthogonality, scaled);
            ++report.samples;
            csv << fmt(p.x) << ',' << fmt(p.y) << ',' << fmt(p.z) << ',' << fmt(u.x) << ','
                << fmt(u.y) << ',' << fmt(u.z) << ',' << fmt(w.x) << ',' << fmt(w.y) << ','
                << fmt(w.z) << '\n';
        }
    }
    report.checks.push_back({"orthogonality", report.max_orthogonality <= 1e-14,
                             "max scaled |u . xi| = " + fmt(report.max_orthogonality)});
    return report;
}

}  // namespace helical
