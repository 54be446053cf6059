// Tensor Gauss-Legendre quadrature of Legendre coefficients.
//
// Coordinates outside the grid are held at 0, the one-point Gauss node, which
// is exact for functions that are affine in those coordinates.
#pragma once

#include "holowidths/coefficients.hpp"
#include "holowidths/legendre.hpp"

#include <cstdint>

namespace holowidths {

enum class GridKind {
    TensorUnion,  // one tensor grid over the union of active dims of the set
    PerIndex,     // a tensor grid over supp(nu) for each member nu
};

struct QuadratureOptions {
    std::uint32_t order = 2;
    GridKind grid = GridKind::TensorUnion;
    double node_budget = 1e8;
};

/// Number of f evaluations compute_coefficients would perform.
[[nodiscard]] double quadrature_node_count(const IndexSet& set, const QuadratureOptions& opts);

/// c_nu = integral of f Psi_nu. Per-dimension order is max(order, max degree + 1).
/// Throws BudgetExceeded when the node count exceeds the budget.
[[nodiscard]] CoefficientVector compute_coefficients(const TestFunction& f, const IndexSet& set,
                                                     const QuadratureOptions& opts = {});

/// Integral of ||f||^2 on the tensor grid of `order` points in dims 1..dims.
[[nodiscard]] double squared_l2_norm(const TestFunction& f, std::size_t dims, std::uint32_t order,
                                     double node_budget = 1e8);

/// [integral Psi_mu Psi_nu] over `set` by tensor quadrature.
[[nodiscard]] Eigen::MatrixXd gram_matrix(const IndexSet& set, std::uint32_t order);

}  // namespace holowidths
