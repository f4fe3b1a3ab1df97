#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helical/grid.hpp"
#include "oracles.hpp"

using namespace helical;
using std::numbers::pi;

TEST_SUITE("grid") {

TEST_CASE("build_disk_domain rejects bad input") {
    CHECK_THROWS_AS(build_disk_domain(0.0, 16), std::invalid_argument);
    CHECK_THROWS_AS(build_disk_domain(-1.0, 16), std::invalid_argument);
    CHECK_THROWS_AS(build_disk_domain(1.0, 7), std::invalid_argument);
    CHECK(build_disk_domain(1.0, 8)->interior_count() > 0);
}

TEST_CASE("n = 8 classification matches the brute-force oracle") {
    const auto d = build_disk_domain(1.0, 8);
    const auto want = oracle::classify_disk(1.0, 8);
    REQUIRE(want.size() == d->node_count());
    int interior = 0;
    int boundary = 0;
    for (std::size_t k = 0; k < want.size(); ++k) {
        const auto got = d->kind(k);
        CHECK(static_cast<int>(got) == static_cast<int>(want[k]));
        interior += got == NodeKind::interior;
        boundary += got == NodeKind::boundary;
    }
    // frozen from the oracle
    CHECK(interior == 45);
    CHECK(boundary == 32);
    CHECK(d->boundary_count() == 32);
}

TEST_CASE("classification matches the oracle at several resolutions and radii") {
    for (const int n : {9, 16, 33, 64}) {
        for (const double r : {0.5, 1.0, 2.5}) {
            const auto d = build_disk_domain(r, n);
            const auto want = oracle::classify_disk(r, n);
            bool same = true;
            for (std::size_t k = 0; k < want.size(); ++k) {
                same = same && static_cast<int>(d->kind(k)) == static_cast<int>(want[k]);
            }
            CHECK(same);
        }
    }
}

TEST_CASE("n = 256 interior fraction approaches pi / 4") {
    const auto d = build_disk_domain(1.0, 256);
    CHECK(d->interior_count() == 51429);
    const double ratio = static_cast<double>(d->interior_count()) / d->node_count();
    CHECK(std::abs(ratio - pi / 4) / (pi / 4) <= 0.02);
}

TEST_CASE("classification invariants") {
    const auto d = build_disk_domain(1.0, 40);
    const int n = d->n();
    for (std::size_t k = 0; k < d->node_count(); ++k) {
        const int i = d->col(k);
        const int j = d->row(k);
        // 4-fold symmetry
        CHECK(d->kind(k) == d->kind(n - i, j));
        CHECK(d->kind(k) == d->kind(i, n - j));
        if (d->is_interior(k)) {
            for (const auto& o : kNeighbourOffsets) {
                REQUIRE(d->in_grid(i + o[0], j + o[1]));
                CHECK(d->kind(i + o[0], j + o[1]) != NodeKind::exterior);
            }
        }
        if (d->kind(k) == NodeKind::boundary) {
            const double r = std::hypot(d->node_x(k), d->node_y(k));
            CHECK(r >= 1.0);
            CHECK(r - 1.0 <= d->h() * std::sqrt(2.0));
        }
    }
    std::size_t u = 0;
    for (const std::size_t k : d->interior_nodes()) CHECK(d->unknown(k) == static_cast<std::int64_t>(u++));
}

TEST_CASE("crossing fraction on the disk") {
    const auto d = build_disk_domain(1.0, 8);
    // node (7, 4) sits at x = 0.75, its neighbour (8, 4) at x = 1
    const double t = d->crossing_fraction(d->node(7, 4), d->node(8, 4));
    CHECK(std::abs(t - 1.0) <= 1e-12);
    const auto e = build_disk_domain(1.0, 10);
    // x = 0.8 to 1.0 along y = 0.4: crossing at sqrt(0.84)
    const double t2 = e->crossing_fraction(e->node(9, 7), e->node(10, 7));
    CHECK(std::abs(t2 - (std::sqrt(0.84) - 0.8) / 0.2) <= 1e-10);
}

TEST_CASE("integrate examples") {
    const auto d = build_disk_domain(1.0, 256);
    CHECK(integrate(ScalarField2D(d)) == 0.0);
    const ScalarField2D one = ScalarField2D::sample(d, [](double, double) { return 1.0; });
    CHECK(std::abs(integrate(one) - pi) / pi <= 0.02);
    const ScalarField2D xf = ScalarField2D::sample(d, [](double x, double) { return x; });
    CHECK(std::abs(integrate(xf)) <= 1e-12 * static_cast<double>(d->node_count()));
}

TEST_CASE("integrate converges to the area at first order or better") {
    double prev = 0.0;
    for (const int n : {32, 64, 128, 256}) {
        const auto d = build_disk_domain(1.0, n);
        const double err =
            std::abs(integrate(ScalarField2D::sample(d, [](double, double) { return 1.0; })) - pi);
        CHECK(err <= 8.0 * d->h());
        prev = err;
    }
    CHECK(prev <= 0.02);
}

TEST_CASE("integrate is linear") {
    const auto d = build_disk_domain(1.0, 48);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const ScalarField2D f = oracle::random_field(d, rng);
        const ScalarField2D g = oracle::random_field(d, rng);
        const double a = 1.7;
        const double b = -0.4;
        const double lhs = integrate(a * f + b * g);
        const double rhs = a * integrate(f) + b * integrate(g);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)) * 10);
    }
}

TEST_CASE("lp_norm and inner") {
    const auto d = build_disk_domain(1.0, 256);
    ScalarField2D zero(d);
    CHECK(lp_norm(zero, 1) == 0.0);
    CHECK(lp_norm(zero, 2) == 0.0);
    CHECK(lp_norm(zero, INFINITY) == 0.0);
    CHECK_THROWS_AS(lp_norm(zero, 0.5), std::invalid_argument);

    const ScalarField2D c = ScalarField2D::sample(d, [](double, double) { return -3.0; });
    CHECK(std::abs(lp_norm(c, 2) - 3.0 * std::sqrt(pi)) / (3.0 * std::sqrt(pi)) <= 0.02);
    CHECK(std::abs(inner(c, c) - lp_norm(c, 2) * lp_norm(c, 2)) <= 1e-9);

    ScalarField2D spike(d);
    spike[d->interior_nodes()[100]] = 5.0;
    CHECK(lp_norm(spike, INFINITY) == 5.0);
    CHECK(sup_norm(spike) == 5.0);
}

TEST_CASE("field basics") {
    const auto d = build_disk_domain(1.0, 8);
    const ScalarField2D f = ScalarField2D::sample(d, [](double x, double y) { return x + y + 10; });
    for (std::size_t k = 0; k < d->node_count(); ++k) {
        if (!d->is_interior(k)) CHECK(f[k] == 0.0);
    }
    CHECK(f.min() == 0.0);
    const auto other = build_disk_domain(1.0, 8);
    CHECK_THROWS_AS((void)(f + ScalarField2D(other)), std::invalid_argument);
}

TEST_CASE("bilinear and cubic interpolation reproduce node values and low-order polynomials") {
    const auto d = build_disk_domain(1.0, 32);
    ScalarField2D lin(d, std::vector<double>(d->node_count()));
    ScalarField2D cub(d, std::vector<double>(d->node_count()));
    auto p1 = [](double x, double y) { return 0.3 + 2 * x - y + 0.5 * x * y; };
    auto p3 = [](double x, double y) { return x * x * x - 2 * x * y * y + y * y + 1.0; };
    for (std::size_t k = 0; k < d->node_count(); ++k) {
        lin[k] = p1(d->node_x(k), d->node_y(k));
        cub[k] = p3(d->node_x(k), d->node_y(k));
    }
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-0.6, 0.6);
    for (int trial = 0; trial < 200; ++trial) {
        const double x = u(rng);
        const double y = u(rng);
        CHECK(std::abs(interpolate_bilinear(lin, x, y) - p1(x, y)) <= 1e-13);
        CHECK(std::abs(interpolate_monotone(lin, x, y) - p1(x, y)) <= 1e-13);
        // clamping can cut the cubic only where it overshoots the corners
        const double c = interpolate_cubic_monotone(cub, x, y);
        const BilinearStencil s = bilinear_stencil(*d, x, y);
        double lo = INFINITY;
        double hi = -INFINITY;
        for (const std::size_t k : s.nodes) {
            lo = std::min(lo, cub[k]);
            hi = std::max(hi, cub[k]);
        }
        const double exact = p3(x, y);
        CHECK(std::abs(c - std::clamp(exact, lo, hi)) <= 1e-12);
    }
    const std::size_t k = d->node(12, 20);
    CHECK(interpolate_cubic_monotone(cub, d->node_x(k), d->node_y(k)) == cub[k]);
    CHECK(interpolate_bilinear(cub, d->node_x(k), d->node_y(k)) == cub[k]);
}

TEST_CASE("property: monotone interpolants never leave the data range") {
    const auto d = build_disk_domain(1.0, 24);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1.1, 1.1);
    for (int trial = 0; trial < 10; ++trial) {
        const ScalarField2D f = oracle::random_field(d, rng);
        for (int s = 0; s < 500; ++s) {
            const double x = u(rng);
            const double y = u(rng);
            const double a = interpolate_monotone(f, x, y);
            const double b = interpolate_cubic_monotone(f, x, y);
            CHECK((a >= f.min() && a <= f.max()));
            CHECK((b >= f.min() && b <= f.max()));
        }
    }
}

TEST_CASE("central_gradient is exact on linear data") {
    const auto d = build_disk_domain(1.0, 16);
    ScalarField2D f(d);
    for (std::size_t k = 0; k < d->node_count(); ++k) {
        if (d->kind(k) != NodeKind::exterior) f[k] = 2.0 * d->node_x(k) - 3.0 * d->node_y(k);
    }
    const FieldGradient g = central_gradient(f);
    for (std::size_t k = 0; k < d->node_count(); ++k) {
        if (d->kind(k) == NodeKind::exterior) {
            CHECK(g.dx[k] == 0.0);
            continue;
        }
        const int i = d->col(k);
        const int j = d->row(k);
        auto ok = [&](int a, int b) { return d->in_grid(a, b) && d->kind(a, b) != NodeKind::exterior; };
        if (ok(i + 1, j) || ok(i - 1, j)) CHECK(std::abs(g.dx[k] - 2.0) <= 1e-12);
        if (ok(i, j + 1) || ok(i, j - 1)) CHECK(std::abs(g.dy[k] + 3.0) <= 1e-12);
    }
}

}  // TEST_SUITE
