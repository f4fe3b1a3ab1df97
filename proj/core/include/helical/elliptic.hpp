#pragma once

/// @file elliptic.hpp
/// @brief Discrete helical operator L_H psi = div(K grad psi) with psi = 0 on
/// the boundary, the matching Dirichlet form, and its SPD solve.
///
/// Discretization. On every grid cell K is evaluated at the cell centre and
/// split into weights along the four stencil directions (x, y, and both
/// diagonals):
///
///     K = a e1 e1^T + b e2 e2^T + c (1,1)(1,1)^T + d (1,-1)(1,-1)^T,
///     a = k11 - |k12|,  b = k22 - |k12|,  c = max(k12, 0),  d = max(-k12, 0).
///
/// Each axis edge collects half of a (or b) from its two adjacent cells and
/// each diagonal collects c (or d) from its own cell. The discrete form is
///
///     <<f, g>>_h = sum_edges W_e (f_p - f_q)(g_p - g_q)
///
/// and A is defined by <-A f, g> = <<f, g>>_h, so symmetry and the discrete
/// integration by parts identity hold by construction. Per cell the form
/// equals g^T K g + 4 (a + b) t^2 (g the cell gradient, t the twist mode), so
/// it is positive definite for every kappa.
///
/// Boundary closure. An edge from an interior node to a node outside the
/// domain is cut at fraction theta where the boundary crosses it; for
/// positive weights the edge uses the linear ghost value through psi = 0 at
/// the crossing, which only adds W / theta to the diagonal. Negative-weight
/// edges (possible only for kappa < R / 2) keep plain pinning.

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "helical/geometry.hpp"
#include "helical/grid.hpp"
#include "helical/sparse.hpp"

namespace helical {

/// Crossing fractions below this are clamped; the boundary then moves by at
/// most this fraction of a cell.
inline constexpr double kMinCrossingFraction = 1e-3;

/// An edge of the discrete Dirichlet form. For cut edges `q` is the outside
/// endpoint and `weight` already carries the closure factor.
struct FormEdge {
    std::size_t p = 0;
    std::size_t q = 0;
    double weight = 0.0;
    bool cut = false;
};

/// Edge set of the form with coefficient field K, shared by assembly and
/// direct evaluation.
std::vector<FormEdge> dirichlet_form_edges(const GridDomain& domain, const HelixParams& helix);

/// Same edge structure with K replaced by the identity.
std::vector<FormEdge> identity_form_edges(const GridDomain& domain);

/// Symmetric sparse representation of -A over interior unknowns.
class DiscreteOperator {
public:
    DiscreteOperator(std::shared_ptr<const GridDomain> domain, CsrMatrix negative_matrix,
                     std::optional<HelixParams> helix);

    const GridDomain& domain() const { return *domain_; }
    const std::shared_ptr<const GridDomain>& domain_ptr() const { return domain_; }
    /// SPD matrix of -A (rows/cols are interior unknowns).
    const CsrMatrix& negative_matrix() const { return matrix_; }
    /// Present for the helical operator, empty for the planar reference.
    const std::optional<HelixParams>& helix() const { return helix_; }

    /// A f at interior nodes (approximates L_H f), 0 elsewhere. Only the
    /// interior values of f are read; the rest are taken as 0.
    ScalarField2D apply(const ScalarField2D& f) const;

private:
    std::shared_ptr<const GridDomain> domain_;
    CsrMatrix matrix_;
    std::optional<HelixParams> helix_;
};

DiscreteOperator assemble(std::shared_ptr<const GridDomain> domain, const HelixParams& helix);

/// Discrete helical inner product <<f, g>>_h evaluated edge by edge. f and g
/// are read on interior nodes only.
double helical_inner(const ScalarField2D& f, const ScalarField2D& g, const HelixParams& helix);

/// Discrete ||grad f||^2 with the identity coefficient.
double h1_seminorm(const ScalarField2D& f);

struct NormEquivalence {
    double lower = 0.0;
    double value = 0.0;
    double upper = 0.0;

    bool holds() const { return lower <= value && value <= upper; }
};

/// (kappa^2 / (kappa^2 + R^2)) ||grad f||^2, ||f||_h^2, ||grad f||^2.
NormEquivalence norm_equivalence_check(const ScalarField2D& f, const HelixParams& helix);

struct SolveResult {
    ScalarField2D psi;
    SolveReport report;
};

inline constexpr double kDefaultSolveTolerance = 1e-10;

/// Solves A psi = omega, psi = 0 off the interior, by Jacobi-preconditioned
/// CG on (-A) psi = -omega. The report says whether the max-norm relative
/// residual reached `tol`; callers decide how to treat a failure.
SolveResult solve(const DiscreteOperator& op, const ScalarField2D& omega,
                  double tol = kDefaultSolveTolerance, int max_iter = 20000,
                  const ScalarField2D* initial_guess = nullptr);

/// 0.5 <-A psi, psi>; for the helical operator this is 0.5 ||psi||_h^2.
double energy(const DiscreteOperator& op, const ScalarField2D& psi);

/// Copy of psi whose boundary nodes hold the linear ghost values implied by
/// psi = 0 on the true boundary (averaged over the interior neighbours).
/// Used for gradients near the wall.
ScalarField2D extend_by_ghosts(const ScalarField2D& psi);

}  // namespace helical
