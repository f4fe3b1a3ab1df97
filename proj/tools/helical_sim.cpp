// Command line front end: run, convergence, degenerate-kappa, stability,
// sample3d. Exit status 0 only when every enabled check passes, 1 when a
// check fails, 2 for usage or configuration errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "helical/config.hpp"
#include "helical/field_io.hpp"
#include "helical/sim.hpp"
#include "helical/version.hpp"

namespace {

using helical::CheckResult;
using helical::format_double;

int report_checks(const std::vector<CheckResult>& checks) {
    bool ok = true;
    for (const CheckResult& c : checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
        std::cout << '\n';
        ok = ok && c.passed;
    }
    return ok ? 0 : 1;
}

int cmd_run(const std::string& config_path, std::string out) {
    const helical::SimConfig config = helical::load_config(config_path);
    if (out.empty()) out = config.output.directory;
    const helical::RunManifest m = helical::run(config, out);
    std::cout << "wrote " << out << " in " << format_double(m.wall_clock_seconds) << " s\n";
    for (const std::string& w : m.warnings) std::cout << "warning: " << w << '\n';
    if (!m.failure.empty()) {
        std::cout << "run failed at step " << m.failure_step << ": " << m.failure << '\n';
    }
    const int status = report_checks(m.checks);
    return m.passed() ? 0 : std::max(status, 1);
}

int cmd_convergence(const std::string& config_path, const std::vector<int>& levels,
                    bool elliptic_only) {
    const helical::SimConfig config = helical::load_config(config_path);
    const helical::ConvergenceReport r = helical::convergence(config, levels, !elliptic_only);
    std::cout << "n,elliptic_error,elliptic_order";
    if (!elliptic_only) std::cout << ",steady_error,steady_order";
    std::cout << '\n';
    for (const auto& row : r.rows) {
        std::cout << row.n << ',' << format_double(row.elliptic_error) << ','
                  << format_double(row.elliptic_order);
        if (!elliptic_only) {
            std::cout << ',' << format_double(row.steady_error) << ','
                      << format_double(row.steady_order);
        }
        std::cout << '\n';
    }
    return report_checks(r.checks);
}

int cmd_degenerate(const std::string& config_path) {
    const helical::SimConfig config = helical::load_config(config_path);
    const helical::KappaReport r = helical::degenerate_kappa(config);
    std::cout << "kappa,psi_difference,centroid_distance\n";
    for (const auto& row : r.rows) {
        std::cout << format_double(row.kappa) << ',' << format_double(row.psi_difference) << ','
                  << format_double(row.centroid_distance) << '\n';
    }
    return report_checks(r.checks);
}

int cmd_stability(const std::string& config_path, const std::vector<double>& deltas) {
    const helical::SimConfig config = helical::load_config(config_path);
    const helical::StabilityReport r = helical::stability(config, deltas);
    if (r.rough_base) {
        std::cout << "note: base initial data is discontinuous; outside the smooth-data regime\n";
    }
    std::cout << "delta,difference\n";
    for (const auto& row : r.rows) {
        std::cout << format_double(row.delta) << ',' << format_double(row.difference) << '\n';
    }
    return report_checks(r.checks);
}

int cmd_sample3d(const std::string& config_path, int z_count, const std::string& out,
                 bool evolve) {
    const helical::SimConfig config = helical::load_config(config_path);
    helical::SampleReport r;
    if (out.empty() || out == "-") {
        r = helical::sample3d(config, z_count, std::cout, evolve);
    } else {
        std::ofstream file(out);
        if (!file) throw std::runtime_error("cannot write " + out);
        r = helical::sample3d(config, z_count, file, evolve);
        std::cout << "wrote " << r.samples << " samples to " << out << '\n';
    }
    // keep stdout clean for CSV when streaming
    std::ostream& log = (out.empty() || out == "-") ? std::cerr : std::cout;
    bool ok = true;
    for (const CheckResult& c : r.checks) {
        log << (c.passed ? "PASS " : "FAIL ") << c.name << "  (" << c.detail << ")\n";
        ok = ok && c.passed;
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Helically symmetric Euler flow on a disk cross-section"};
    app.set_version_flag("--version", std::string(helical::kVersion));
    app.require_subcommand(1);

    std::string config_path;
    std::string out;
    std::vector<int> levels{64, 128, 256};
    std::vector<double> deltas{1e-2, 1e-3, 1e-4};
    int z_count = 8;
    bool elliptic_only = false;
    bool evolve = false;

    auto* run = app.add_subcommand("run", "time-step a configuration and write outputs");
    run->add_option("--config", config_path, "config file")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out, "output directory (default: output.directory)");

    auto* conv = app.add_subcommand("convergence", "refinement study");
    conv->add_option("--config", config_path, "config file")->required()->check(CLI::ExistingFile);
    conv->add_option("--levels", levels, "grid sizes")->delimiter(',');
    conv->add_flag("--elliptic-only", elliptic_only, "skip the transport steadiness study");

    auto* degen = app.add_subcommand("degenerate-kappa", "compare with the planar reference");
    degen->add_option("--config", config_path, "config file")->required()->check(CLI::ExistingFile);

    auto* stab = app.add_subcommand("stability", "perturbed-initial-data experiment");
    stab->add_option("--config", config_path, "config file")->required()->check(CLI::ExistingFile);
    stab->add_option("--deltas", deltas, "perturbation sizes")->delimiter(',');

    auto* sample = app.add_subcommand("sample3d", "export 3D velocity and vorticity samples");
    sample->add_option("--config", config_path, "config file")->required()->check(CLI::ExistingFile);
    sample->add_option("--z-count", z_count, "slices per helix period")->check(CLI::PositiveNumber);
    sample->add_option("--out", out, "CSV file (default: stdout)");
    sample->add_flag("--evolve", evolve, "sample the state at time.t_end instead of t = 0");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // help and version exit 0; usage errors share the config error code
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*run) return cmd_run(config_path, out);
        if (*conv) return cmd_convergence(config_path, levels, elliptic_only);
        if (*degen) return cmd_degenerate(config_path);
        if (*stab) return cmd_stability(config_path, deltas);
        if (*sample) return cmd_sample3d(config_path, z_count, out, evolve);
    } catch (const helical::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
