#pragma once

/// @file grid.hpp
/// @brief Masked Cartesian discretization of the planar cross-section.
///
/// The cross-section is embedded in the square [-R, R]^2 with n cells per
/// axis, so there are (n + 1)^2 nodes indexed row-major: node = j (n + 1) + i,
/// with i running along x and j along y.
///
/// Classification:
///   - interior:  strictly inside the domain (signed distance < 0); these are
///                the unknowns of every solve.
///   - boundary:  on or outside the boundary but 8-adjacent to an interior
///                node; values are pinned (0 for stream functions).
///   - exterior:  everything else; stored as 0.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace helical {

enum class NodeKind : std::uint8_t { interior, boundary, exterior };

/// A simply connected planar domain given by its signed distance (negative
/// inside), contained in the disk of radius `radius` about the origin.
struct DomainShape {
    std::function<double(double, double)> signed_distance;
    double radius = 1.0;
    bool is_disk = false;

    static DomainShape disk(double radius);
};

/// Offsets of the 8 neighbours, axis neighbours first.
inline constexpr std::array<std::array<int, 2>, 8> kNeighbourOffsets{{
    {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1},
}};

class GridDomain {
public:
    static std::shared_ptr<const GridDomain> build(DomainShape shape, int n);

    int n() const { return n_; }
    int nodes_per_axis() const { return n_ + 1; }
    std::size_t node_count() const { return kinds_.size(); }
    double h() const { return h_; }
    double radius() const { return shape_.radius; }
    const DomainShape& shape() const { return shape_; }

    double x(int i) const { return -shape_.radius + i * h_; }
    double y(int j) const { return -shape_.radius + j * h_; }
    std::size_t node(int i, int j) const { return static_cast<std::size_t>(j) * (n_ + 1) + i; }
    int col(std::size_t node) const { return static_cast<int>(node % (n_ + 1)); }
    int row(std::size_t node) const { return static_cast<int>(node / (n_ + 1)); }
    double node_x(std::size_t node) const { return x(col(node)); }
    double node_y(std::size_t node) const { return y(row(node)); }
    bool in_grid(int i, int j) const { return i >= 0 && j >= 0 && i <= n_ && j <= n_; }

    NodeKind kind(std::size_t node) const { return kinds_[node]; }
    NodeKind kind(int i, int j) const { return kinds_[node(i, j)]; }
    bool is_interior(std::size_t node) const { return kinds_[node] == NodeKind::interior; }

    /// Unknown index of an interior node, -1 otherwise.
    std::int64_t unknown(std::size_t node) const { return unknown_[node]; }
    std::span<const std::size_t> interior_nodes() const { return interior_; }
    std::size_t interior_count() const { return interior_.size(); }
    std::size_t boundary_count() const;

    double signed_distance(double x, double y) const { return shape_.signed_distance(x, y); }
    bool contains(double x, double y) const { return signed_distance(x, y) < 0.0; }

    /// Fraction t in (0, 1] of the segment from interior node `from` to
    /// non-interior node `to` at which the boundary is crossed.
    double crossing_fraction(std::size_t from, std::size_t to) const;

private:
    GridDomain(DomainShape shape, int n);

    DomainShape shape_;
    int n_;
    double h_;
    std::vector<NodeKind> kinds_;
    std::vector<std::int64_t> unknown_;
    std::vector<std::size_t> interior_;
};

/// Convenience constructor for the default disk cross-section. Rejects
/// radius <= 0 and n < 8.
std::shared_ptr<const GridDomain> build_disk_domain(double radius, int n);

/// One real value per grid node. Exterior nodes hold 0.
class ScalarField2D {
public:
    explicit ScalarField2D(std::shared_ptr<const GridDomain> domain);
    ScalarField2D(std::shared_ptr<const GridDomain> domain, std::vector<double> values);

    /// Samples fn at interior nodes; all other nodes are 0.
    static ScalarField2D sample(std::shared_ptr<const GridDomain> domain,
                                const std::function<double(double, double)>& fn);

    const GridDomain& domain() const { return *domain_; }
    const std::shared_ptr<const GridDomain>& domain_ptr() const { return domain_; }

    double operator[](std::size_t node) const { return values_[node]; }
    double& operator[](std::size_t node) { return values_[node]; }
    double operator()(int i, int j) const { return values_[domain_->node(i, j)]; }
    double& operator()(int i, int j) { return values_[domain_->node(i, j)]; }

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    /// Extremes over all nodes (the zero extension included).
    double min() const;
    double max() const;

    /// Sets every non-interior node to 0.
    void zero_outside();

    ScalarField2D& operator+=(const ScalarField2D& other);
    ScalarField2D& operator-=(const ScalarField2D& other);
    ScalarField2D& operator*=(double s);

    friend ScalarField2D operator+(ScalarField2D a, const ScalarField2D& b) { return a += b; }
    friend ScalarField2D operator-(ScalarField2D a, const ScalarField2D& b) { return a -= b; }
    friend ScalarField2D operator*(double s, ScalarField2D a) { return a *= s; }

private:
    void check_same_domain(const ScalarField2D& other) const;

    std::shared_ptr<const GridDomain> domain_;
    std::vector<double> values_;
};

/// Midpoint rule: h^2 times the sum over interior nodes.
double integrate(const ScalarField2D& field);

/// Discrete L^p norm; p = infinity gives the max over interior nodes.
double lp_norm(const ScalarField2D& field, double p);

/// Discrete L^2 inner product over interior nodes.
double inner(const ScalarField2D& f, const ScalarField2D& g);

/// Max |value| over interior nodes.
double sup_norm(const ScalarField2D& field);

/// Nodes and weights of the bilinear stencil around (x, y); the point is
/// clamped into the grid box first.
struct BilinearStencil {
    std::array<std::size_t, 4> nodes{};
    std::array<double, 4> weights{};
};

BilinearStencil bilinear_stencil(const GridDomain& domain, double x, double y);

double interpolate_bilinear(const ScalarField2D& field, double x, double y);

/// Bilinear value clamped to the range of its four stencil values, so the
/// result never leaves [min, max] of the data even under rounding.
double interpolate_monotone(const ScalarField2D& field, double x, double y);

/// Tensor-product cubic Lagrange interpolation on the 4x4 nodes around
/// (x, y), clamped to the range of the four corners of the enclosing cell.
/// Nodes outside the grid read 0.
double interpolate_cubic_monotone(const ScalarField2D& field, double x, double y);

struct FieldGradient {
    ScalarField2D dx;
    ScalarField2D dy;
};

/// Gradient at interior and boundary nodes from the stored values: central
/// differences where both axis neighbours are non-exterior, one-sided where
/// only one is, 0 otherwise. Exterior nodes get 0.
FieldGradient central_gradient(const ScalarField2D& f);

}  // namespace helical
