#pragma once

/// @file reconstruction.hpp
/// @brief Physical fields from the stream function: in-plane velocity, the
/// axial component fixed by orthogonality, and helical 3D evaluation that
/// factors through the 2D slice.

#include <memory>

#include "helical/geometry.hpp"
#include "helical/grid.hpp"

namespace helical {

struct PlanarVelocity {
    ScalarField2D ux;
    ScalarField2D uy;
};

/// (u_x, u_y) = (1 / (k^2 + r^2)) [[xy, -k^2 - x^2], [k^2 + y^2, -xy]] grad psi
/// at interior and boundary nodes, with grad psi from central_gradient of the
/// stored values (pass extend_by_ghosts(psi) for a wall-bounded psi).
PlanarVelocity velocity_from_psi(const ScalarField2D& psi, const HelixParams& h);

/// Pointwise form of the above.
Vec2 velocity_from_gradient(const HelixParams& h, double x, double y, Vec2 grad_psi);

/// Inverse map: grad psi = (1 / k^2) [[-xy, k^2 + x^2], [-k^2 - y^2, xy]] u.
Vec2 gradient_from_velocity(const HelixParams& h, double x, double y, Vec2 u);

/// u_z = (-y u_x + x u_y) / kappa.
double axial_component(const HelixParams& h, double x, double y, double ux, double uy);

/// A helical vector field on the 3D domain, stored as its z = 0 slice.
class HelicalField3D {
public:
    /// Velocity from the in-plane components; u_z follows from orthogonality.
    static HelicalField3D from_velocity(PlanarVelocity u, const HelixParams& h);
    /// Vorticity (omega / kappa) xi from the scalar omega.
    static HelicalField3D from_vorticity(ScalarField2D omega, const HelixParams& h);

    /// u(p) = R_{z/kappa} u(S_{-z/kappa} p), slice values by bilinear
    /// interpolation. Throws std::out_of_range when the slice point is not
    /// inside the cross-section.
    Vec3 eval(const Point3& p) const;

    const HelixParams& helix() const { return helix_; }
    const GridDomain& domain() const { return a_.domain(); }

private:
    enum class Kind { velocity, vorticity };
    HelicalField3D(Kind kind, ScalarField2D a, ScalarField2D b, const HelixParams& h);

    Kind kind_;
    ScalarField2D a_;
    ScalarField2D b_;
    HelixParams helix_;
};

inline Vec3 eval_3d(const HelicalField3D& field, const Point3& p) { return field.eval(p); }

HelicalField3D vorticity_3d(const ScalarField2D& omega, const HelixParams& h);

/// (1/k^2) [d_x((k^2 + y^2) u_x - xy u_y) + d_y((k^2 + x^2) u_y - xy u_x)] by
/// central differences at interior nodes.
ScalarField2D reduced_divergence(const PlanarVelocity& u, const HelixParams& h);

/// Interior nodes at least `cells` grid cells inside the boundary.
std::vector<std::size_t> nodes_away_from_boundary(const GridDomain& domain, double cells);

/// Default wall margin of curl_check as a fraction of the radius. Within a
/// few cells of the wall the discrete psi carries grid-scale cut-cell error
/// whose second differences do not shrink with h, so a margin fixed in
/// cells would not converge.
inline constexpr double kCurlMarginFraction = 0.2;

/// max |d_x u_y - d_y u_x - omega| over interior nodes at distance at least
/// max(2h, margin_fraction R) from the boundary.
double curl_check(const PlanarVelocity& u, const ScalarField2D& omega,
                  double margin_fraction = kCurlMarginFraction);

}  // namespace helical
