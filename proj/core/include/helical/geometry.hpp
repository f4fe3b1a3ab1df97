#pragma once

/// @file geometry.hpp
/// @brief Closed-form primitives of the helical symmetry group.
///
/// The group acts on R^3 by screw motions S_rho: a rotation by rho about the
/// z-axis combined with a translation kappa*rho along it. Everything here is
/// a pure function of its arguments.

#include <array>
#include <cmath>
#include <functional>

namespace helical {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

using Point3 = Vec3;

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// Pitch of the helical symmetry. Nonzero and finite; the sign is kept.
class HelixParams {
public:
    explicit HelixParams(double kappa);

    double kappa() const { return kappa_; }
    double kappa_sq() const { return kappa_ * kappa_; }

private:
    double kappa_;
};

/// Symmetric 2x2 coefficient matrix of the reduced elliptic operator.
struct CoeffMatrix {
    double k11 = 1.0;
    double k12 = 0.0;
    double k22 = 1.0;

    double trace() const { return k11 + k22; }
    double det() const { return k11 * k22 - k12 * k12; }
    /// Ascending eigenvalues from the closed-form 2x2 formula.
    std::array<double, 2> eigenvalues() const;
};

/// d/drho of the rotation R_rho at rho = 0. Fixed constant.
inline constexpr std::array<std::array<double, 3>, 3> kRotationGenerator{{
    {0.0, 1.0, 0.0},
    {-1.0, 0.0, 0.0},
    {0.0, 0.0, 0.0},
}};

/// R_rho: rotation about the z-axis, (x cos + y sin, -x sin + y cos, z).
Vec3 rotate(double rho, const Vec3& v);

/// S_rho p = R_rho p + (0, 0, kappa rho).
Point3 screw(const HelixParams& h, double rho, const Point3& p);

/// Tangent field of the symmetry helices, (y, -x, kappa).
Vec3 xi(const HelixParams& h, const Point3& p);

CoeffMatrix coeff_matrix(const HelixParams& h, double x, double y);

/// Smaller eigenvalue of K at (x, y): kappa^2 / (kappa^2 + x^2 + y^2).
double radial_eigenvalue(const HelixParams& h, double x, double y);

/// Component of v along the helix tangent: y v_x - x v_y + kappa v_z.
double u_xi(const HelixParams& h, const Point3& p, const Vec3& v);

using ScalarFn3 = std::function<double(const Point3&)>;
using VectorFn3 = std::function<Vec3(const Point3&)>;

inline constexpr double kDefaultResidualStep = 1e-5;

/// y f_x - x f_y + kappa f_z by central differences; zero for helical f.
double helicality_residual_scalar(const HelixParams& h, const ScalarFn3& f, const Point3& p,
                                  double step = kDefaultResidualStep);

/// dv/dxi - R v, componentwise; zero for helical vector fields.
Vec3 helicality_residual_vector(const HelixParams& h, const VectorFn3& v, const Point3& p,
                                double step = kDefaultResidualStep);

/// Vorticity of an orthogonal helical flow from its z-component omega:
/// (omega / kappa) xi, so the third component is omega itself.
Vec3 lift_vorticity(const HelixParams& h, double x, double y, double omega);

/// Direction of the boundary tangent of the cross-section at (x, y) given the
/// in-plane velocity there. A zero result is the degenerate case.
Vec2 boundary_tangent(const HelixParams& h, double x, double y, Vec2 u);

}  // namespace helical
