// Block basis pursuit: min sum_i ||z_i||_2 subject to A z = f, with z in (R^K)^N.
#pragma once

#include "holowidths/legendre.hpp"
#include "holowidths/sampling.hpp"

#include <functional>
#include <iosfwd>
#include <string>

namespace holowidths {

struct BPOptions {
    double tol = 1e-9;
    std::size_t max_iter = 0;  // 0 selects 50 N
    std::function<void(std::size_t iteration, double residual, double objective)> progress;
};

struct BPSolution {
    Eigen::MatrixXd blocks;  // N x K
    double residual_norm = 0.0;
    double objective = 0.0;
    std::size_t iterations = 0;
    bool converged = false;

    /// {"residual":..,"objective":..,"iterations":..,"converged":..}
    [[nodiscard]] std::string sidecar_json() const;
};

/// ADMM on the split x in {Az = f}, z free, with exact projection onto the
/// affine set and blockwise soft thresholding. When f is outside range(A) the
/// zero vector is returned with converged = false.
[[nodiscard]] BPSolution basis_pursuit_block(const Eigen::MatrixXd& A, const Eigen::MatrixXd& f,
                                             const BPOptions& opts = {});
[[nodiscard]] BPSolution basis_pursuit_block(const SketchOperator& A, const Measurements& f,
                                             const BPOptions& opts = {});

/// Blockwise soft thresholding: x_i max(0, 1 - t/||x_i||).
[[nodiscard]] Eigen::MatrixXd block_soft_threshold(const Eigen::MatrixXd& x, double t);

/// Expansion sum over Lambda of the recovered blocks times Psi_nu.
[[nodiscard]] TestFunction unknown_reconstruct(const BPSolution& sol, const IndexSet& lambda);

struct RnspBounds {
    double l1 = 0.0;  // C1 sigma
    double l2 = 0.0;  // C2 sigma / sqrt(s)
};

[[nodiscard]] double rnsp_c1(double rho);
[[nodiscard]] double rnsp_c2(double rho);
[[nodiscard]] RnspBounds rnsp_error_bounds(double rho, std::size_t s, double sigma_s_1);

/// Best s-term error of the block norms in l^1: sum of all but the s largest.
[[nodiscard]] double block_best_s_term_l1(const Eigen::MatrixXd& blocks, std::size_t s);

}  // namespace holowidths
