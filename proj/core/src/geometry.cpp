#include "helical/geometry.hpp"

#include <stdexcept>

namespace helical {

HelixParams::HelixParams(double kappa) : kappa_(kappa) {
    if (!(std::isfinite(kappa) && kappa != 0.0)) {
        throw std::invalid_argument("HelixParams: kappa must be finite and nonzero");
    }
}

std::array<double, 2> CoeffMatrix::eigenvalues() const {
    const double half_trace = 0.5 * trace();
    const double half_gap = std::hypot(0.5 * (k11 - k22), k12);
    // lambda_min via det / lambda_max avoids cancellation when the gap is tiny
    const double lambda_max = half_trace + half_gap;
    const double lambda_min = lambda_max != 0.0 ? det() / lambda_max : half_trace - half_gap;
    return {lambda_min, lambda_max};
}

Vec3 rotate(double rho, const Vec3& v) {
    const double c = std::cos(rho);
    const double s = std::sin(rho);
    return {v.x * c + v.y * s, -v.x * s + v.y * c, v.z};
}

Point3 screw(const HelixParams& h, double rho, const Point3& p) {
    Point3 q = rotate(rho, p);
    q.z = p.z + h.kappa() * rho;
    return q;
}

Vec3 xi(const HelixParams& h, const Point3& p) { return {p.y, -p.x, h.kappa()}; }

CoeffMatrix coeff_matrix(const HelixParams& h, double x, double y) {
    const double k2 = h.kappa_sq();
    const double inv = 1.0 / (k2 + x * x + y * y);
    return {(k2 + y * y) * inv, -x * y * inv, (k2 + x * x) * inv};
}

double radial_eigenvalue(const HelixParams& h, double x, double y) {
    const double k2 = h.kappa_sq();
    return k2 / (k2 + x * x + y * y);
}

double u_xi(const HelixParams& h, const Point3& p, const Vec3& v) {
    return p.y * v.x - p.x * v.y + h.kappa() * v.z;
}

namespace {

// Central difference of g along xi(p), i.e. (g(p + s xi) - g(p - s xi)) / 2s.
template <class G>
auto directional_difference(const HelixParams& h, const G& g, const Point3& p, double step) {
    const Vec3 dir = xi(h, p);
    return (1.0 / (2.0 * step)) * (g(p + step * dir) - g(p - step * dir));
}

}  // namespace

double helicality_residual_scalar(const HelixParams& h, const ScalarFn3& f, const Point3& p,
                                  double step) {
    const Vec3 dir = xi(h, p);
    return (f(p + step * dir) - f(p - step * dir)) / (2.0 * step);
}

Vec3 helicality_residual_vector(const HelixParams& h, const VectorFn3& v, const Point3& p,
                                double step) {
    const Vec3 dv = directional_difference(h, v, p, step);
    const Vec3 val = v(p);
    const auto& r = kRotationGenerator;
    const Vec3 rv{r[0][0] * val.x + r[0][1] * val.y + r[0][2] * val.z,
                  r[1][0] * val.x + r[1][1] * val.y + r[1][2] * val.z,
                  r[2][0] * val.x + r[2][1] * val.y + r[2][2] * val.z};
    return dv - rv;
}

Vec3 lift_vorticity(const HelixParams& h, double x, double y, double omega) {
    const double s = omega / h.kappa();
    return {s * y, -s * x, omega};
}

Vec2 boundary_tangent(const HelixParams& h, double x, double y, Vec2 u) {
    const double k2 = h.kappa_sq();
    return {(k2 + y * y) * u.x - x * y * u.y, (k2 + x * x) * u.y - x * y * u.x};
}

}  // namespace helical
