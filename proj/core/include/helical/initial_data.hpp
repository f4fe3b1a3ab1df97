#pragma once

/// @file initial_data.hpp
/// @brief Initial vorticity presets and mollification of rough data.

#include <memory>
#include <string>
#include <string_view>

#include "helical/grid.hpp"

namespace helical {

/// exp(-1 / (1 - s^2)) for |s| < 1, else 0. Unnormalized.
double bump_profile(double s);

struct MollifierSpec {
    double epsilon = 0.1;
};

/// Discrete kernel: bump_profile(|offset| h / eps) on the grid offsets inside
/// the eps-ball, normalized so the weights sum to 1 (the h^2 quadrature
/// factor is folded in). Offsets are listed row by row.
struct MollifierKernel {
    int reach = 0;                // offsets range over [-reach, reach]^2
    std::vector<double> weights;  // (2 reach + 1)^2 values

    double weight(int di, int dj) const {
        return weights[static_cast<std::size_t>((dj + reach) * (2 * reach + 1) + di + reach)];
    }
};

/// Throws std::invalid_argument unless eps > 2h.
MollifierKernel mollifier_kernel(const GridDomain& domain, const MollifierSpec& spec);

/// sigma_eps * (chi f), where chi keeps the nodes at distance >= 2 eps from
/// the boundary. The result vanishes within eps of the boundary.
ScalarField2D mollify(const ScalarField2D& f, const MollifierSpec& spec);

enum class PresetKind { zero, radial_bump, gaussian_vortex, vortex_patch, shear_like };

std::string_view preset_name(PresetKind kind);
/// Throws std::invalid_argument for an unknown name.
PresetKind parse_preset(std::string_view name);

struct InitPreset {
    PresetKind kind = PresetKind::zero;
    double amplitude = 1.0;
    double center_x = 0.0;
    double center_y = 0.0;
    /// Gaussian width (gaussian-vortex, radial-bump) or layer half-width (shear-like).
    double width = 0.2;
    /// Patch radius (vortex-patch).
    double radius = 0.3;

    /// True for the discontinuous presets.
    bool is_rough() const { return kind == PresetKind::vortex_patch; }
};

/// Samples the preset at interior nodes:
///   radial-bump      a exp(-r^2 / w^2)                 (centred at the origin)
///   gaussian-vortex  a exp(-|x - c|^2 / w^2)
///   vortex-patch     a [|x - c| < radius]
///   shear-like       a sech^2((y - c_y) / w)
ScalarField2D generate(const InitPreset& preset, std::shared_ptr<const GridDomain> domain);

}  // namespace helical
