#pragma once

/// @file planar.hpp
/// @brief Five-point Dirichlet Laplacian on the same masked grid, used as the
/// kappa -> infinity reference.

#include <memory>

#include "helical/elliptic.hpp"

namespace helical {

/// Standard five-point Laplacian with the same cut-edge ghost closure.
/// Built node by node, independently of the helical edge assembly.
DiscreteOperator assemble_planar_poisson(std::shared_ptr<const GridDomain> domain);

}  // namespace helical
