#include "helical/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace helical {

namespace {

// Directional weights of one cell.
struct CellSplit {
    double a;  // x edges
    double b;  // y edges
    double c;  // (i, j) -- (i + 1, j + 1)
    double d;  // (i + 1, j) -- (i, j + 1)
};

CellSplit split(const CoeffMatrix& k) {
    const double m = std::abs(k.k12);
    return {k.k11 - m, k.k22 - m, std::max(k.k12, 0.0), std::max(-k.k12, 0.0)};
}

template <typename CoeffFn>
std::vector<FormEdge> build_edges(const GridDomain& dom, CoeffFn coeff) {
    const int n = dom.n();
    const int m = n + 1;
    const double h = dom.h();
    const std::size_t count = dom.node_count();
    // per-node accumulators for the edge starting at that node
    std::vector<double> wx(count, 0.0), wy(count, 0.0), wd(count, 0.0), wa(count, 0.0);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const std::size_t c00 = dom.node(i, j);
            const std::size_t c10 = dom.node(i + 1, j);
            const std::size_t c01 = dom.node(i, j + 1);
            const std::size_t c11 = dom.node(i + 1, j + 1);
            if (!dom.is_interior(c00) && !dom.is_interior(c10) && !dom.is_interior(c01) &&
                !dom.is_interior(c11)) {
                continue;
            }
            const CellSplit s = split(coeff(dom.x(i) + 0.5 * h, dom.y(j) + 0.5 * h));
            wx[c00] += 0.5 * s.a;
            wx[c01] += 0.5 * s.a;
            wy[c00] += 0.5 * s.b;
            wy[c10] += 0.5 * s.b;
            wd[c00] += s.c;
            wa[c00] += s.d;
        }
    }

    std::vector<FormEdge> edges;
    edges.reserve(4 * dom.interior_count() + 64);
    auto add = [&](std::size_t p, std::size_t q, double w) {
        if (w == 0.0) return;
        const bool pin = dom.is_interior(p);
        const bool qin = dom.is_interior(q);
        if (pin && qin) {
            edges.push_back({p, q, w, false});
            return;
        }
        if (!pin && !qin) return;
        const std::size_t inside = pin ? p : q;
        const std::size_t outside = pin ? q : p;
        double weight = w;
        if (w > 0.0) {
            const double theta =
                std::max(dom.crossing_fraction(inside, outside), kMinCrossingFraction);
            weight = w / theta;
        }
        edges.push_back({inside, outside, weight, true});
    };
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < m; ++i) {
            const std::size_t k = dom.node(i, j);
            if (i < n) add(k, dom.node(i + 1, j), wx[k]);
            if (j < n) add(k, dom.node(i, j + 1), wy[k]);
            if (i < n && j < n) {
                add(k, dom.node(i + 1, j + 1), wd[k]);
                add(dom.node(i + 1, j), dom.node(i, j + 1), wa[k]);
            }
        }
    }
    return edges;
}

double form_value(const std::vector<FormEdge>& edges, const ScalarField2D& f,
                  const ScalarField2D& g) {
    double sum = 0.0;
    for (const FormEdge& e : edges) {
        if (e.cut) {
            sum += e.weight * f[e.p] * g[e.p];
        } else {
            sum += e.weight * (f[e.p] - f[e.q]) * (g[e.p] - g[e.q]);
        }
    }
    return sum;
}

}  // namespace

std::vector<FormEdge> dirichlet_form_edges(const GridDomain& domain, const HelixParams& helix) {
    return build_edges(domain, [&](double x, double y) { return coeff_matrix(helix, x, y); });
}

std::vector<FormEdge> identity_form_edges(const GridDomain& domain) {
    return build_edges(domain, [](double, double) { return CoeffMatrix{1.0, 0.0, 1.0}; });
}

DiscreteOperator::DiscreteOperator(std::shared_ptr<const GridDomain> domain,
                                   CsrMatrix negative_matrix, std::optional<HelixParams> helix)
    : domain_(std::move(domain)), matrix_(std::move(negative_matrix)), helix_(std::move(helix)) {
    if (!domain_) {
        throw std::invalid_argument("DiscreteOperator: null domain");
    }
    if (matrix_.rows() != domain_->interior_count()) {
        throw std::invalid_argument("DiscreteOperator: matrix size does not match the unknowns");
    }
}

ScalarField2D DiscreteOperator::apply(const ScalarField2D& f) const {
    if (f.domain_ptr() != domain_) {
        throw std::invalid_argument("DiscreteOperator::apply: field lives on another grid");
    }
    const std::size_t nu = domain_->interior_count();
    std::vector<double> x(nu), y(nu);
    const auto interior = domain_->interior_nodes();
    for (std::size_t u = 0; u < nu; ++u) x[u] = f[interior[u]];
    matrix_.multiply(x, y);
    ScalarField2D out(domain_);
    for (std::size_t u = 0; u < nu; ++u) out[interior[u]] = -y[u];
    return out;
}

DiscreteOperator assemble(std::shared_ptr<const GridDomain> domain, const HelixParams& helix) {
    if (!domain) {
        throw std::invalid_argument("assemble: null domain");
    }
    const GridDomain& dom = *domain;
    const double inv_h2 = 1.0 / (dom.h() * dom.h());
    std::vector<CsrMatrix::Entry> entries;
    const std::vector<FormEdge> edges = dirichlet_form_edges(dom, helix);
    entries.reserve(4 * edges.size());
    for (const FormEdge& e : edges) {
        const std::int64_t up = dom.unknown(e.p);
        const double w = e.weight * inv_h2;
        entries.push_back({up, up, w});
        if (e.cut) continue;
        const std::int64_t uq = dom.unknown(e.q);
        entries.push_back({uq, uq, w});
        entries.push_back({up, uq, -w});
        entries.push_back({uq, up, -w});
    }
    return DiscreteOperator(std::move(domain), CsrMatrix(dom.interior_count(), std::move(entries)),
                            helix);
}

double helical_inner(const ScalarField2D& f, const ScalarField2D& g, const HelixParams& helix) {
    if (f.domain_ptr() != g.domain_ptr()) {
        throw std::invalid_argument("helical_inner: fields live on different grids");
    }
    return form_value(dirichlet_form_edges(f.domain(), helix), f, g);
}

double h1_seminorm(const ScalarField2D& f) {
    return form_value(identity_form_edges(f.domain()), f, f);
}

NormEquivalence norm_equivalence_check(const ScalarField2D& f, const HelixParams& helix) {
    const double r = f.domain().radius();
    const double grad = h1_seminorm(f);
    NormEquivalence out;
    out.lower = helix.kappa_sq() / (helix.kappa_sq() + r * r) * grad;
    out.value = helical_inner(f, f, helix);
    out.upper = grad;
    return out;
}

SolveResult solve(const DiscreteOperator& op, const ScalarField2D& omega, double tol, int max_iter,
                  const ScalarField2D* initial_guess) {
    const GridDomain& dom = op.domain();
    if (omega.domain_ptr() != op.domain_ptr()) {
        throw std::invalid_argument("solve: right-hand side lives on another grid");
    }
    if (initial_guess != nullptr && initial_guess->domain_ptr() != op.domain_ptr()) {
        throw std::invalid_argument("solve: initial guess lives on another grid");
    }
    const auto interior = dom.interior_nodes();
    const std::size_t nu = interior.size();
    std::vector<double> b(nu), x(nu, 0.0);
    for (std::size_t u = 0; u < nu; ++u) {
        b[u] = -omega[interior[u]];
        if (initial_guess != nullptr) x[u] = (*initial_guess)[interior[u]];
    }
    SolveResult result{ScalarField2D(op.domain_ptr()), {}};
    result.report = conjugate_gradient(op.negative_matrix(), b, x, tol, max_iter);
    for (std::size_t u = 0; u < nu; ++u) result.psi[interior[u]] = x[u];
    return result;
}

double energy(const DiscreteOperator& op, const ScalarField2D& psi) {
    const ScalarField2D a_psi = op.apply(psi);
    return -0.5 * inner(a_psi, psi);
}

ScalarField2D extend_by_ghosts(const ScalarField2D& psi) {
    const GridDomain& dom = psi.domain();
    ScalarField2D out = psi;
    const std::size_t count = dom.node_count();
    for (std::size_t q = 0; q < count; ++q) {
        if (dom.kind(q) != NodeKind::boundary) continue;
        const int i = dom.col(q);
        const int j = dom.row(q);
        double sum = 0.0;
        int hits = 0;
        // axis neighbours first, diagonals only when no axis neighbour is inside
        for (int pass = 0; pass < 2 && hits == 0; ++pass) {
            for (int k = 4 * pass; k < 4 * pass + 4; ++k) {
                const int ii = i + kNeighbourOffsets[k][0];
                const int jj = j + kNeighbourOffsets[k][1];
                if (!dom.in_grid(ii, jj)) continue;
                const std::size_t p = dom.node(ii, jj);
                if (!dom.is_interior(p)) continue;
                const double theta = std::max(dom.crossing_fraction(p, q), kMinCrossingFraction);
                sum += psi[p] * (theta - 1.0) / theta;
                ++hits;
            }
        }
        out[q] = hits > 0 ? sum / hits : 0.0;
    }
    return out;
}

}  // namespace helical
