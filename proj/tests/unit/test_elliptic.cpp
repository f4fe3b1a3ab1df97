#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "helical/elliptic.hpp"
#include "helical/planar.hpp"
#include "oracles.hpp"

using namespace helical;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// interior nodes whose 8 neighbours are all interior
std::vector<std::size_t> deep_nodes(const GridDomain& d) {
    std::vector<std::size_t> out;
    for (const std::size_t k : d.interior_nodes()) {
        bool deep = true;
        for (const auto& o : kNeighbourOffsets) {
            deep = deep && d.kind(d.col(k) + o[0], d.row(k) + o[1]) == NodeKind::interior;
        }
        if (deep) out.push_back(k);
    }
    return out;
}

double max_error_within(const ScalarField2D& psi, const std::function<double(double, double)>& exact,
                        double radius) {
    const GridDomain& d = psi.domain();
    double e = 0.0;
    for (const std::size_t k : d.interior_nodes()) {
        const double x = d.node_x(k);
        const double y = d.node_y(k);
        if (std::hypot(x, y) <= radius) e = std::max(e, std::abs(psi[k] - exact(x, y)));
    }
    return e;
}

}  // namespace

TEST_SUITE("elliptic") {

TEST_CASE("assembled matrix is exactly symmetric with positive diagonal") {
    for (const double kappa : {0.3, 1.0, 5.0}) {
        const DiscreteOperator op = assemble(build_disk_domain(1.0, 24), HelixParams(kappa));
        const CsrMatrix& m = op.negative_matrix();
        const auto rp = m.row_ptr();
        const auto cols = m.cols();
        const auto vals = m.values();
        for (std::size_t r = 0; r < m.rows(); ++r) {
            CHECK(m.diagonal(r) > 0.0);
            for (std::size_t k = rp[r]; k < rp[r + 1]; ++k) {
                CHECK(m.at(static_cast<std::size_t>(cols[k]), r) == vals[k]);
            }
        }
    }
}

TEST_CASE("kappa = 1e6 reduces to the five-point Laplacian entry by entry") {
    const auto d = build_disk_domain(1.0, 32);
    const DiscreteOperator h = assemble(d, HelixParams(1e6));
    const DiscreteOperator p = assemble_planar_poisson(d);
    const double scale = p.negative_matrix().diagonal(0);
    auto compare = [&](const CsrMatrix& x, const CsrMatrix& y) {
        const auto rp = x.row_ptr();
        const auto cols = x.cols();
        const auto vals = x.values();
        for (std::size_t r = 0; r < x.rows(); ++r) {
            for (std::size_t k = rp[r]; k < rp[r + 1]; ++k) {
                const double other = y.at(r, static_cast<std::size_t>(cols[k]));
                if (other != 0.0) {
                    CHECK(rel(vals[k], other) <= 1e-10);
                } else {
                    CHECK(std::abs(vals[k]) <= 1e-10 * scale);
                }
            }
        }
    };
    compare(h.negative_matrix(), p.negative_matrix());
    compare(p.negative_matrix(), h.negative_matrix());
}

TEST_CASE("constant field: rows away from the boundary sum to zero") {
    const auto d = build_disk_domain(1.0, 32);
    const DiscreteOperator op = assemble(d, HelixParams(0.7));
    const ScalarField2D a1 = op.apply(ScalarField2D::sample(d, [](double, double) { return 1.0; }));
    const auto deep = deep_nodes(*d);
    REQUIRE(!deep.empty());
    for (const std::size_t k : deep) CHECK(std::abs(a1[k]) <= 1e-9);
}

TEST_CASE("operator is consistent with div(K grad psi) in the deep interior") {
    const double kappa = 0.8;
    auto psi = [](double x, double y) { return std::sin(1.3 * x + 0.4) * std::cos(0.9 * y) + x * y * y; };
    double prev = INFINITY;
    for (const int n : {32, 64, 128}) {
        const auto d = build_disk_domain(1.0, n);
        const DiscreteOperator op = assemble(d, HelixParams(kappa));
        const ScalarField2D a = op.apply(ScalarField2D::sample(d, psi));
        double err = 0.0;
        for (const std::size_t k : deep_nodes(*d)) {
            const double x = d->node_x(k);
            const double y = d->node_y(k);
            if (std::hypot(x, y) > 0.8) continue;
            err = std::max(err, std::abs(a[k] - oracle::flux_divergence(kappa, psi, x, y)));
        }
        CHECK(err < prev / 3.0);
        prev = err;
    }
    CHECK(prev <= 1e-3);
}

TEST_CASE("helical_inner examples") {
    const auto d = build_disk_domain(1.0, 32);
    std::mt19937_64 rng(21);
    const ScalarField2D f = oracle::random_field(d, rng);
    const ScalarField2D g = oracle::random_field(d, rng);
    const HelixParams h(1.0);
    CHECK(helical_inner(ScalarField2D(d), f, h) == 0.0);
    CHECK(rel(helical_inner(f, g, h), helical_inner(g, f, h)) <= 1e-14);
    const double big = helical_inner(f, f, HelixParams(1e6));
    CHECK(rel(big, h1_seminorm(f)) <= 1e-6);
}

TEST_CASE("property: adjointness helical_inner(f, g) + <A f, g> = 0") {
    const auto d = build_disk_domain(1.0, 40);
    std::mt19937_64 rng(23);
    for (const double kappa : {0.4, 1.0, 3.0}) {
        const HelixParams h(kappa);
        const DiscreteOperator op = assemble(d, h);
        for (int trial = 0; trial < 30; ++trial) {
            const ScalarField2D f = oracle::random_field(d, rng);
            const ScalarField2D g = oracle::random_field(d, rng);
            // inner() carries the h^2 quadrature weight of the form
            const double lhs = helical_inner(f, g, h);
            const double ag = inner(op.apply(f), g);
            CHECK(std::abs(lhs + ag) <= 1e-12 * std::abs(lhs));
        }
    }
}

TEST_CASE("property: positivity on random fields and the lowest mode") {
    const auto d = build_disk_domain(1.0, 32);
    std::mt19937_64 rng(29);
    for (const double kappa : {0.2, 1.0, 10.0}) {
        const HelixParams h(kappa);
        const DiscreteOperator op = assemble(d, h);
        for (int trial = 0; trial < 30; ++trial) {
            const ScalarField2D f = oracle::random_field(d, rng);
            CHECK(-inner(op.apply(f), f) > 0.0);
            CHECK(helical_inner(f, f, h) > 0.0);
        }
        // inverse iteration towards the lowest mode
        ScalarField2D v = ScalarField2D::sample(d, [](double, double) { return 1.0; });
        for (int it = 0; it < 8; ++it) {
            ScalarField2D w = solve(op, v, 1e-10).psi;
            w *= 1.0 / sup_norm(w);
            v = w;
        }
        const double rq = -inner(op.apply(v), v) / inner(v, v);
        CHECK(rq > 0.0);
        // continuum lowest eigenvalue of -L_H lies between kappa^2/(kappa^2+1) j0^2 and j0^2
        const double j0sq = 2.404825557695773 * 2.404825557695773;
        CHECK(rq <= 1.05 * j0sq);
        CHECK(rq >= 0.95 * kappa * kappa / (kappa * kappa + 1.0) * j0sq);
    }
}

TEST_CASE("norm equivalence") {
    const auto d = build_disk_domain(1.0, 32);
    const NormEquivalence z = norm_equivalence_check(ScalarField2D(d), HelixParams(1.0));
    CHECK(z.lower == 0.0);
    CHECK(z.value == 0.0);
    CHECK(z.upper == 0.0);
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        const ScalarField2D f = oracle::random_field(d, rng);
        const NormEquivalence e = norm_equivalence_check(f, HelixParams(1.0));
        CHECK(e.holds());
        CHECK(rel(e.lower, 0.5 * e.upper) <= 1e-14);
        const NormEquivalence big = norm_equivalence_check(f, HelixParams(1e6));
        CHECK(big.value / big.upper >= 1.0 - 1e-6);
        CHECK(big.value / big.upper <= 1.0);
    }
    // smooth field vanishing on the wall
    const ScalarField2D s =
        ScalarField2D::sample(d, [](double x, double y) { return (1 - x * x - y * y) * (1 + x); });
    for (const double kappa : {0.3, 1.0, 4.0}) CHECK(norm_equivalence_check(s, HelixParams(kappa)).holds());
}

TEST_CASE("solve: zero data gives zero") {
    const auto d = build_disk_domain(1.0, 16);
    const DiscreteOperator op = assemble(d, HelixParams(1.0));
    const SolveResult r = solve(op, ScalarField2D(d));
    CHECK(r.report.converged);
    CHECK(sup_norm(r.psi) == 0.0);
    CHECK(r.psi.max() == 0.0);
    CHECK(r.psi.min() == 0.0);
}

TEST_CASE("solve: CG matches dense elimination at n = 12") {
    const auto d = build_disk_domain(1.0, 12);
    const DiscreteOperator op = assemble(d, HelixParams(1.0));
    std::mt19937_64 rng(37);
    const ScalarField2D omega = oracle::random_field(d, rng);
    const SolveResult r = solve(op, omega, 1e-13);
    REQUIRE(r.report.converged);
    std::vector<double> b;
    for (const std::size_t k : d->interior_nodes()) b.push_back(-omega[k]);
    const auto x = oracle::dense_solve(oracle::to_dense(op.negative_matrix()), b);
    double scale = 0.0;
    for (const double v : x) scale = std::max(scale, std::abs(v));
    std::size_t u = 0;
    for (const std::size_t k : d->interior_nodes()) CHECK(std::abs(r.psi[k] - x[u++]) <= 1e-10 * scale);
}

TEST_CASE("solve: psi is zero off the interior and the residual is small") {
    const auto d = build_disk_domain(1.0, 48);
    const DiscreteOperator op = assemble(d, HelixParams(1.0));
    const ScalarField2D omega =
        ScalarField2D::sample(d, [](double x, double y) { return std::exp(-(x * x + y * y) / 0.1); });
    const SolveResult r = solve(op, omega);
    CHECK(r.report.converged);
    CHECK(r.report.residual <= kDefaultSolveTolerance);
    for (std::size_t k = 0; k < d->node_count(); ++k) {
        if (!d->is_interior(k)) CHECK(r.psi[k] == 0.0);
    }
    CHECK(sup_norm(op.apply(r.psi) - omega) <= 1e-9 * sup_norm(omega));
}

TEST_CASE("solve: non-convergence is reported") {
    const auto d = build_disk_domain(1.0, 64);
    const DiscreteOperator op = assemble(d, HelixParams(1.0));
    const ScalarField2D omega = ScalarField2D::sample(d, [](double x, double) { return x; });
    const SolveResult r = solve(op, omega, 1e-10, 2);
    CHECK_FALSE(r.report.converged);
    CHECK(r.report.iterations == 2);
}

TEST_CASE("solve: radial manufactured solution converges at second order") {
    const double kappa = 1.0;
    auto exact = [](double x, double y) { return 1.0 - x * x - y * y; };
    auto rhs = [&](double x, double y) {
        const double s = kappa * kappa + x * x + y * y;
        return -4.0 * std::pow(kappa, 4) / (s * s);
    };
    // the closed-form right-hand side agrees with the independent flux oracle
    for (const double r : {0.0, 0.3, 0.7}) CHECK(std::abs(oracle::flux_divergence(kappa, exact, r, 0.1) - rhs(r, 0.1)) <= 1e-6);

    std::vector<double> errs;
    for (const int n : {32, 64, 128}) {
        const auto d = build_disk_domain(1.0, n);
        const SolveResult r = solve(assemble(d, HelixParams(kappa)), ScalarField2D::sample(d, rhs));
        REQUIRE(r.report.converged);
        errs.push_back(max_error_within(r.psi, exact, 0.8));
    }
    CHECK(std::log2(errs[0] / errs[1]) >= 1.8);
    CHECK(std::log2(errs[1] / errs[2]) >= 1.8);
}

TEST_CASE("solve: non-radial manufactured solution at kappa = 1 and 5") {
    for (const double kappa : {1.0, 5.0}) {
        auto exact = [](double x, double y) { return (1.0 - x * x - y * y) * (1.0 + 0.5 * x - 0.3 * y * y); };
        auto rhs = [&](double x, double y) { return oracle::flux_divergence(kappa, exact, x, y); };
        std::vector<double> errs;
        for (const int n : {32, 64, 128}) {
            const auto d = build_disk_domain(1.0, n);
            const SolveResult r = solve(assemble(d, HelixParams(kappa)), ScalarField2D::sample(d, rhs));
            REQUIRE(r.report.converged);
            errs.push_back(max_error_within(r.psi, exact, 1.0));
        }
        CHECK(std::log2(errs[1] / errs[2]) >= 1.7);
        CHECK(errs[2] <= 1e-3);
    }
}

TEST_CASE("solve: kappa = 1e6 matches the independent five-point solve") {
    const auto d = build_disk_domain(1.0, 64);
    const ScalarField2D omega = ScalarField2D::sample(
        d, [](double x, double y) { return std::exp(-((x - 0.3) * (x - 0.3) + y * y) / 0.04); });
    const SolveResult h = solve(assemble(d, HelixParams(1e6)), omega, 1e-12);
    const SolveResult p = solve(assemble_planar_poisson(d), omega, 1e-12);
    CHECK(sup_norm(h.psi - p.psi) <= 1e-6 * sup_norm(p.psi));
}

TEST_CASE("energy is half the helical norm") {
    const auto d = build_disk_domain(1.0, 32);
    const HelixParams h(1.5);
    const DiscreteOperator op = assemble(d, h);
    std::mt19937_64 rng(41);
    const ScalarField2D f = oracle::random_field(d, rng);
    CHECK(rel(energy(op, f), 0.5 * helical_inner(f, f, h)) <= 1e-12);
}

TEST_CASE("ghost extension extrapolates through the wall") {
    for (const int n : {32, 64}) {
        const auto d = build_disk_domain(1.0, n);
        const ScalarField2D psi = ScalarField2D::sample(d, [](double x, double y) { return 1 - x * x - y * y; });
        const ScalarField2D g = extend_by_ghosts(psi);
        for (std::size_t k = 0; k < d->node_count(); ++k) {
            if (d->is_interior(k)) {
                CHECK(g[k] == psi[k]);
            } else if (d->kind(k) == NodeKind::boundary) {
                const double x = d->node_x(k);
                const double y = d->node_y(k);
                CHECK(std::abs(g[k] - (1 - x * x - y * y)) <= 4.0 * d->h() * d->h());
            } else {
                CHECK(g[k] == 0.0);
            }
        }
    }
}

}  // TEST_SUITE
