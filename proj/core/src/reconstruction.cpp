#include "helical/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace helical {

Vec2 velocity_from_gradient(const HelixParams& h, double x, double y, Vec2 g) {
    const double k2 = h.kappa_sq();
    const double s = 1.0 / (k2 + x * x + y * y);
    return {s * (x * y * g.x - (k2 + x * x) * g.y), s * ((k2 + y * y) * g.x - x * y * g.y)};
}

Vec2 gradient_from_velocity(const HelixParams& h, double x, double y, Vec2 u) {
    const double k2 = h.kappa_sq();
    return {(-x * y * u.x + (k2 + x * x) * u.y) / k2, (-(k2 + y * y) * u.x + x * y * u.y) / k2};
}

double axial_component(const HelixParams& h, double x, double y, double ux, double uy) {
    return (-y * ux + x * uy) / h.kappa();
}

PlanarVelocity velocity_from_psi(const ScalarField2D& psi, const HelixParams& h) {
    const GridDomain& d = psi.domain();
    const FieldGradient g = central_gradient(psi);
    PlanarVelocity u{ScalarField2D(psi.domain_ptr()), ScalarField2D(psi.domain_ptr())};
    for (std::size_t k = 0; k < d.node_count(); ++k) {
        if (d.kind(k) == NodeKind::exterior) continue;
        const Vec2 v = velocity_from_gradient(h, d.node_x(k), d.node_y(k), {g.dx[k], g.dy[k]});
        u.ux[k] = v.x;
        u.uy[k] = v.y;
    }
    return u;
}

HelicalField3D::HelicalField3D(Kind kind, ScalarField2D a, ScalarField2D b, const HelixParams& h)
    : kind_(kind), a_(std::move(a)), b_(std::move(b)), helix_(h) {
    if (a_.domain_ptr() != b_.domain_ptr()) {
        throw std::invalid_argument("HelicalField3D: components live on different grids");
    }
}

HelicalField3D HelicalField3D::from_velocity(PlanarVelocity u, const HelixParams& h) {
    return HelicalField3D(Kind::velocity, std::move(u.ux), std::move(u.uy), h);
}

HelicalField3D HelicalField3D::from_vorticity(ScalarField2D omega, const HelixParams& h) {
    ScalarField2D copy = omega;
    return HelicalField3D(Kind::vorticity, std::move(omega), std::move(copy), h);
}

Vec3 HelicalField3D::eval(const Point3& p) const {
    const double rho = p.z / helix_.kappa();
    const Point3 s = screw(helix_, -rho, p);
    const GridDomain& d = a_.domain();
    if (!d.contains(s.x, s.y)) {
        throw std::out_of_range("HelicalField3D: slice point (" + std::to_string(s.x) + ", " +
                                std::to_string(s.y) + ") is outside the cross-section");
    }
    Vec3 slice;
    if (kind_ == Kind::velocity) {
        const double ux = interpolate_bilinear(a_, s.x, s.y);
        const double uy = interpolate_bilinear(b_, s.x, s.y);
        slice = {ux, uy, axial_component(helix_, s.x, s.y, ux, uy)};
    } else {
        slice = lift_vorticity(helix_, s.x, s.y, interpolate_bilinear(a_, s.x, s.y));
    }
    return rotate(rho, slice);
}

HelicalField3D vorticity_3d(const ScalarField2D& omega, const HelixParams& h) {
    return HelicalField3D::from_vorticity(omega, h);
}

ScalarField2D reduced_divergence(const PlanarVelocity& u, const HelixParams& h) {
    const GridDomain& d = u.ux.domain();
    const double k2 = h.kappa_sq();
    ScalarField2D fx(u.ux.domain_ptr());
    ScalarField2D fy(u.ux.domain_ptr());
    for (std::size_t k = 0; k < d.node_count(); ++k) {
        if (d.kind(k) == NodeKind::exterior) continue;
        const double x = d.node_x(k);
        const double y = d.node_y(k);
        fx[k] = (k2 + y * y) * u.ux[k] - x * y * u.uy[k];
        fy[k] = (k2 + x * x) * u.uy[k] - x * y * u.ux[k];
    }
    const double inv = 1.0 / (2.0 * d.h() * k2);
    ScalarField2D out(u.ux.domain_ptr());
    for (const std::size_t k : d.interior_nodes()) {
        const int i = d.col(k);
        const int j = d.row(k);
        out[k] = inv * (fx(i + 1, j) - fx(i - 1, j) + fy(i, j + 1) - fy(i, j - 1));
    }
    return out;
}

std::vector<std::size_t> nodes_away_from_boundary(const GridDomain& domain, double cells) {
    std::vector<std::size_t> out;
    const double margin = cells * domain.h();
    for (const std::size_t k : domain.interior_nodes()) {
        if (domain.signed_distance(domain.node_x(k), domain.node_y(k)) <= -margin) {
            out.push_back(k);
        }
    }
    return out;
}

double curl_check(const PlanarVelocity& u, const ScalarField2D& omega, double margin_fraction) {
    const GridDomain& d = u.ux.domain();
    const double inv = 1.0 / (2.0 * d.h());
    const double cells = std::max(2.0, margin_fraction * d.radius() / d.h());
    double worst = 0.0;
    for (const std::size_t k : nodes_away_from_boundary(d, cells)) {
        const int i = d.col(k);
        const int j = d.row(k);
        const double curl =
            inv * (u.uy(i + 1, j) - u.uy(i - 1, j) - u.ux(i, j + 1) + u.ux(i, j - 1));
        worst = std::max(worst, std::abs(curl - omega[k]));
    }
    return worst;
}

}  // namespace helical
