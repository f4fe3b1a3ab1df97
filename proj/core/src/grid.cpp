#include "helical/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace helical {

DomainShape DomainShape::disk(double radius) {
    DomainShape shape;
    shape.radius = radius;
    shape.is_disk = true;
    shape.signed_distance = [radius](double x, double y) { return std::hypot(x, y) - radius; };
    return shape;
}

GridDomain::GridDomain(DomainShape shape, int n)
    : shape_(std::move(shape)), n_(n), h_(2.0 * shape_.radius / n) {
    const int m = n_ + 1;
    const std::size_t count = static_cast<std::size_t>(m) * m;
    std::vector<char> inside(count, 0);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < m; ++i) {
            inside[node(i, j)] = signed_distance(x(i), y(j)) < 0.0 ? 1 : 0;
        }
    }
    kinds_.assign(count, NodeKind::exterior);
    unknown_.assign(count, -1);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < m; ++i) {
            const std::size_t k = node(i, j);
            if (inside[k]) {
                // the enclosing square lies outside the domain, so interior
                // nodes never touch the grid edge
                if (i == 0 || j == 0 || i == n_ || j == n_) {
                    throw std::invalid_argument("GridDomain: domain leaks past its bounding radius");
                }
                kinds_[k] = NodeKind::interior;
                unknown_[k] = static_cast<std::int64_t>(interior_.size());
                interior_.push_back(k);
                continue;
            }
            for (const auto& [di, dj] : kNeighbourOffsets) {
                const int ii = i + di;
                const int jj = j + dj;
                if (in_grid(ii, jj) && inside[node(ii, jj)]) {
                    kinds_[k] = NodeKind::boundary;
                    break;
                }
            }
        }
    }
}

std::shared_ptr<const GridDomain> GridDomain::build(DomainShape shape, int n) {
    if (!(shape.radius > 0.0) || !std::isfinite(shape.radius)) {
        throw std::invalid_argument("GridDomain: radius must be positive");
    }
    if (n < 8) {
        throw std::invalid_argument("GridDomain: need at least 8 cells per axis, got " +
                                    std::to_string(n));
    }
    if (!shape.signed_distance) {
        throw std::invalid_argument("GridDomain: missing signed distance");
    }
    return std::shared_ptr<const GridDomain>(new GridDomain(std::move(shape), n));
}

std::shared_ptr<const GridDomain> build_disk_domain(double radius, int n) {
    if (!(radius > 0.0)) {
        throw std::invalid_argument("build_disk_domain: radius must be positive");
    }
    return GridDomain::build(DomainShape::disk(radius), n);
}

std::size_t GridDomain::boundary_count() const {
    return static_cast<std::size_t>(
        std::count(kinds_.begin(), kinds_.end(), NodeKind::boundary));
}

double GridDomain::crossing_fraction(std::size_t from, std::size_t to) const {
    const double x0 = node_x(from);
    const double y0 = node_y(from);
    const double dx = node_x(to) - x0;
    const double dy = node_y(to) - y0;
    if (shape_.is_disk) {
        // |p + t d| = R, root in (0, 1] since |p| < R <= |p + d|
        const double a = dx * dx + dy * dy;
        const double b = x0 * dx + y0 * dy;
        const double c = x0 * x0 + y0 * y0 - shape_.radius * shape_.radius;
        const double disc = std::sqrt(std::max(b * b - a * c, 0.0));
        // c < 0 so the positive root is (-b + disc) / a; use the stable form
        const double t = (b >= 0.0) ? -c / (b + disc) : (disc - b) / a;
        return std::clamp(t, 0.0, 1.0);
    }
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (signed_distance(x0 + mid * dx, y0 + mid * dy) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi;
}

ScalarField2D::ScalarField2D(std::shared_ptr<const GridDomain> domain)
    : domain_(std::move(domain)) {
    if (!domain_) {
        throw std::invalid_argument("ScalarField2D: null domain");
    }
    values_.assign(domain_->node_count(), 0.0);
}

ScalarField2D::ScalarField2D(std::shared_ptr<const GridDomain> domain, std::vector<double> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
    if (!domain_) {
        throw std::invalid_argument("ScalarField2D: null domain");
    }
    if (values_.size() != domain_->node_count()) {
        throw std::invalid_argument("ScalarField2D: value count does not match the grid");
    }
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (domain_->kind(k) == NodeKind::exterior) {
            values_[k] = 0.0;
        }
    }
}

ScalarField2D ScalarField2D::sample(std::shared_ptr<const GridDomain> domain,
                                    const std::function<double(double, double)>& fn) {
    ScalarField2D out(std::move(domain));
    const GridDomain& d = out.domain();
    for (const std::size_t k : d.interior_nodes()) {
        out.values_[k] = fn(d.node_x(k), d.node_y(k));
    }
    return out;
}

double ScalarField2D::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField2D::max() const { return *std::max_element(values_.begin(), values_.end()); }

void ScalarField2D::zero_outside() {
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!domain_->is_interior(k)) {
            values_[k] = 0.0;
        }
    }
}

void ScalarField2D::check_same_domain(const ScalarField2D& other) const {
    if (domain_ != other.domain_) {
        throw std::invalid_argument("ScalarField2D: fields live on different grids");
    }
}

ScalarField2D& ScalarField2D::operator+=(const ScalarField2D& other) {
    check_same_domain(other);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
    return *this;
}

ScalarField2D& ScalarField2D::operator-=(const ScalarField2D& other) {
    check_same_domain(other);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
    return *this;
}

ScalarField2D& ScalarField2D::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

double integrate(const ScalarField2D& field) {
    const GridDomain& d = field.domain();
    double sum = 0.0;
    for (const std::size_t k : d.interior_nodes()) sum += field[k];
    return d.h() * d.h() * sum;
}

double sup_norm(const ScalarField2D& field) {
    double m = 0.0;
    for (const std::size_t k : field.domain().interior_nodes()) m = std::max(m, std::abs(field[k]));
    return m;
}

double lp_norm(const ScalarField2D& field, double p) {
    if (std::isinf(p) && p > 0.0) {
        return sup_norm(field);
    }
    if (!(p >= 1.0)) {
        throw std::invalid_argument("lp_norm: p must be >= 1 or infinity");
    }
    const GridDomain& d = field.domain();
    double sum = 0.0;
    if (p == 2.0) {
        for (const std::size_t k : d.interior_nodes()) sum += field[k] * field[k];
        return std::sqrt(d.h() * d.h() * sum);
    }
    for (const std::size_t k : d.interior_nodes()) sum += std::pow(std::abs(field[k]), p);
    return std::pow(d.h() * d.h() * sum, 1.0 / p);
}

double inner(const ScalarField2D& f, const ScalarField2D& g) {
    if (f.domain_ptr() != g.domain_ptr()) {
        throw std::invalid_argument("inner: fields live on different grids");
    }
    const GridDomain& d = f.domain();
    double sum = 0.0;
    for (const std::size_t k : d.interior_nodes()) sum += f[k] * g[k];
    return d.h() * d.h() * sum;
}

BilinearStencil bilinear_stencil(const GridDomain& domain, double x, double y) {
    const int n = domain.n();
    const double R = domain.radius();
    const double h = domain.h();
    const double sx = std::clamp((x + R) / h, 0.0, static_cast<double>(n));
    const double sy = std::clamp((y + R) / h, 0.0, static_cast<double>(n));
    const int i = std::min(static_cast<int>(sx), n - 1);
    const int j = std::min(static_cast<int>(sy), n - 1);
    const double ax = sx - i;
    const double ay = sy - j;
    BilinearStencil st;
    st.nodes = {domain.node(i, j), domain.node(i + 1, j), domain.node(i, j + 1),
                domain.node(i + 1, j + 1)};
    st.weights = {(1.0 - ax) * (1.0 - ay), ax * (1.0 - ay), (1.0 - ax) * ay, ax * ay};
    return st;
}

double interpolate_bilinear(const ScalarField2D& field, double x, double y) {
    const BilinearStencil st = bilinear_stencil(field.domain(), x, y);
    double v = 0.0;
    for (int q = 0; q < 4; ++q) v += st.weights[q] * field[st.nodes[q]];
    return v;
}

double interpolate_monotone(const ScalarField2D& field, double x, double y) {
    const BilinearStencil st = bilinear_stencil(field.domain(), x, y);
    double v = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int q = 0; q < 4; ++q) {
        const double fq = field[st.nodes[q]];
        v += st.weights[q] * fq;
        lo = std::min(lo, fq);
        hi = std::max(hi, fq);
    }
    return std::clamp(v, lo, hi);
}

namespace {

std::array<double, 4> cubic_weights(double t) {
    return {-t * (t - 1.0) * (t - 2.0) / 6.0, (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0,
            -(t + 1.0) * t * (t - 2.0) / 2.0, (t + 1.0) * t * (t - 1.0) / 6.0};
}

}  // namespace

double interpolate_cubic_monotone(const ScalarField2D& field, double x, double y) {
    const GridDomain& d = field.domain();
    const int n = d.n();
    const double R = d.radius();
    const double h = d.h();
    const double sx = std::clamp((x + R) / h, 0.0, static_cast<double>(n));
    const double sy = std::clamp((y + R) / h, 0.0, static_cast<double>(n));
    const int i = std::min(static_cast<int>(sx), n - 1);
    const int j = std::min(static_cast<int>(sy), n - 1);
    const std::array<double, 4> wx = cubic_weights(sx - i);
    const std::array<double, 4> wy = cubic_weights(sy - j);
    double v = 0.0;
    for (int b = 0; b < 4; ++b) {
        const int jj = j - 1 + b;
        double row = 0.0;
        for (int a = 0; a < 4; ++a) {
            const int ii = i - 1 + a;
            if (d.in_grid(ii, jj)) row += wx[a] * field(ii, jj);
        }
        v += wy[b] * row;
    }
    const double c00 = field(i, j);
    const double c10 = field(i + 1, j);
    const double c01 = field(i, j + 1);
    const double c11 = field(i + 1, j + 1);
    return std::clamp(v, std::min({c00, c10, c01, c11}), std::max({c00, c10, c01, c11}));
}

namespace {

double axis_difference(const GridDomain& d, const ScalarField2D& f, int i, int j, int di, int dj) {
    const bool fwd = d.in_grid(i + di, j + dj) && d.kind(i + di, j + dj) != NodeKind::exterior;
    const bool bwd = d.in_grid(i - di, j - dj) && d.kind(i - di, j - dj) != NodeKind::exterior;
    const double h = d.h();
    if (fwd && bwd) return (f(i + di, j + dj) - f(i - di, j - dj)) / (2.0 * h);
    if (fwd) return (f(i + di, j + dj) - f(i, j)) / h;
    if (bwd) return (f(i, j) - f(i - di, j - dj)) / h;
    return 0.0;
}

}  // namespace

FieldGradient central_gradient(const ScalarField2D& f) {
    const GridDomain& d = f.domain();
    FieldGradient g{ScalarField2D(f.domain_ptr()), ScalarField2D(f.domain_ptr())};
    for (std::size_t k = 0; k < d.node_count(); ++k) {
        if (d.kind(k) == NodeKind::exterior) continue;
        const int i = d.col(k);
        const int j = d.row(k);
        g.dx[k] = axis_difference(d, f, i, j, 1, 0);
        g.dy[k] = axis_difference(d, f, i, j, 0, 1);
    }
    return g;
}

}  // namespace helical
