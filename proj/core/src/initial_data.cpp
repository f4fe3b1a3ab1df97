#include "helical/initial_data.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace helical {

double bump_profile(double s) {
    const double a = std::abs(s);
    if (a >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - a * a));
}

MollifierKernel mollifier_kernel(const GridDomain& domain, const MollifierSpec& spec) {
    const double h = domain.h();
    if (!(spec.epsilon > 2.0 * h)) {
        throw std::invalid_argument("mollify: epsilon " + std::to_string(spec.epsilon) +
                                    " does not exceed 2h = " + std::to_string(2.0 * h));
    }
    MollifierKernel k;
    k.reach = static_cast<int>(std::ceil(spec.epsilon / h));
    const int w = 2 * k.reach + 1;
    k.weights.assign(static_cast<std::size_t>(w) * w, 0.0);
    double sum = 0.0;
    for (int dj = -k.reach; dj <= k.reach; ++dj) {
        for (int di = -k.reach; di <= k.reach; ++di) {
            const double v = bump_profile(std::hypot(di * h, dj * h) / spec.epsilon);
            k.weights[static_cast<std::size_t>((dj + k.reach) * w + di + k.reach)] = v;
            sum += v;
        }
    }
    for (double& v : k.weights) v /= sum;
    return k;
}

ScalarField2D mollify(const ScalarField2D& f, const MollifierSpec& spec) {
    const GridDomain& d = f.domain();
    const MollifierKernel kernel = mollifier_kernel(d, spec);
    const double keep = 2.0 * spec.epsilon;

    // chi f on the whole grid, 0 outside C_{2 eps}
    std::vector<double> cut(d.node_count(), 0.0);
    for (const std::size_t k : d.interior_nodes()) {
        if (-d.signed_distance(d.node_x(k), d.node_y(k)) >= keep) cut[k] = f[k];
    }
    ScalarField2D out(f.domain_ptr());
    const int r = kernel.reach;
    for (const std::size_t k : d.interior_nodes()) {
        const int i = d.col(k);
        const int j = d.row(k);
        double sum = 0.0;
        for (int dj = -r; dj <= r; ++dj) {
            for (int di = -r; di <= r; ++di) {
                const int ii = i - di;
                const int jj = j - dj;
                if (!d.in_grid(ii, jj)) continue;
                const double c = cut[d.node(ii, jj)];
                if (c != 0.0) sum += kernel.weight(di, dj) * c;
            }
        }
        out[k] = sum;
    }
    return out;
}

namespace {

constexpr std::array<std::pair<PresetKind, std::string_view>, 5> kPresetNames{{
    {PresetKind::zero, "zero"},
    {PresetKind::radial_bump, "radial-bump"},
    {PresetKind::gaussian_vortex, "gaussian-vortex"},
    {PresetKind::vortex_patch, "vortex-patch"},
    {PresetKind::shear_like, "shear-like"},
}};

}  // namespace

std::string_view preset_name(PresetKind kind) {
    for (const auto& [k, name] : kPresetNames) {
        if (k == kind) return name;
    }
    return "unknown";
}

PresetKind parse_preset(std::string_view name) {
    for (const auto& [k, n] : kPresetNames) {
        if (n == name) return k;
    }
    throw std::invalid_argument("unknown initial preset '" + std::string(name) + "'");
}

ScalarField2D generate(const InitPreset& p, std::shared_ptr<const GridDomain> domain) {
    const double a = p.amplitude;
    switch (p.kind) {
        case PresetKind::zero:
            return ScalarField2D(std::move(domain));
        case PresetKind::radial_bump: {
            const double w2 = p.width * p.width;
            return ScalarField2D::sample(std::move(domain), [=](double x, double y) {
                return a * std::exp(-(x * x + y * y) / w2);
            });
        }
        case PresetKind::gaussian_vortex: {
            const double w2 = p.width * p.width;
            return ScalarField2D::sample(std::move(domain), [=](double x, double y) {
                const double dx = x - p.center_x;
                const double dy = y - p.center_y;
                return a * std::exp(-(dx * dx + dy * dy) / w2);
            });
        }
        case PresetKind::vortex_patch: {
            const double r2 = p.radius * p.radius;
            return ScalarField2D::sample(std::move(domain), [=](double x, double y) {
                const double dx = x - p.center_x;
                const double dy = y - p.center_y;
                return dx * dx + dy * dy < r2 ? a : 0.0;
            });
        }
        case PresetKind::shear_like:
            return ScalarField2D::sample(std::move(domain), [=](double, double y) {
                const double c = std::cosh((y - p.center_y) / p.width);
                return a / (c * c);
            });
    }
    throw std::logic_error("generate: unhandled preset");
}

}  // namespace helical
