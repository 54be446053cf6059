#include "holowidths/recovery.hpp"

#include "holowidths/error.hpp"

#include "json.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <functional>

namespace holowidths {

namespace {

double block_l1(const Eigen::MatrixXd& z) { return z.rowwise().norm().sum(); }

// Least squares on the support of z. The result replaces z when it is feasible
// and either carries a dual certificate (a Y with A_S^T Y equal to the unit
// blocks on the support and every other column of A^T Y inside the unit ball)
// or is no worse in objective. This removes the residual thresholding bias.
enum class Polish { Rejected, Accepted, Certified };

Polish polish(const Eigen::MatrixXd& A, const Eigen::MatrixXd& f, double feas_tol, Eigen::MatrixXd& z) {
    const Eigen::VectorXd norms = z.rowwise().norm();
    const double peak = norms.maxCoeff();
    if (peak == 0.0) return Polish::Rejected;
    std::vector<Eigen::Index> support;
    for (Eigen::Index i = 0; i < norms.size(); ++i)
        if (norms(i) > 1e-8 * peak) support.push_back(i);
    if (static_cast<Eigen::Index>(support.size()) > A.rows()) return Polish::Rejected;
    const auto s = static_cast<Eigen::Index>(support.size());
    Eigen::MatrixXd As(A.rows(), s);
    for (Eigen::Index j = 0; j < s; ++j) As.col(j) = A.col(support[static_cast<std::size_t>(j)]);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(As);
    if (qr.rank() < As.cols()) return Polish::Rejected;
    const Eigen::MatrixXd w = qr.solve(f);
    if ((As * w - f).norm() > feas_tol) return Polish::Rejected;
    Eigen::MatrixXd candidate = Eigen::MatrixXd::Zero(z.rows(), z.cols());
    Eigen::MatrixXd unit(s, z.cols());
    for (Eigen::Index j = 0; j < s; ++j) {
        const double n = w.row(j).norm();
        if (n == 0.0) return Polish::Rejected;
        candidate.row(support[static_cast<std::size_t>(j)]) = w.row(j);
        unit.row(j) = w.row(j) / n;
    }

    const Eigen::MatrixXd Y = As.transpose().completeOrthogonalDecomposition().solve(unit);
    const Eigen::MatrixXd G = A.transpose() * Y;
    bool certified = (As.transpose() * Y - unit).norm() <= 1e-9 * std::sqrt(static_cast<double>(s));
    for (Eigen::Index i = 0; i < G.rows() && certified; ++i) certified = G.row(i).norm() <= 1.0 + 1e-9;
    if (!certified && block_l1(candidate) > block_l1(z) * (1.0 + 1e-6) + 1e-12) return Polish::Rejected;
    z = std::move(candidate);
    return certified ? Polish::Certified : Polish::Accepted;
}

}  // namespace

std::string BPSolution::sidecar_json() const {
    nlohmann::ordered_json j;
    j["residual"] = residual_norm;
    j["objective"] = objective;
    j["iterations"] = iterations;
    j["converged"] = converged;
    return j.dump();
}

Eigen::MatrixXd block_soft_threshold(const Eigen::MatrixXd& x, double t) {
    Eigen::MatrixXd out(x.rows(), x.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const double n = x.row(i).norm();
        const double scale = n > t ? 1.0 - t / n : 0.0;
        out.row(i) = scale * x.row(i);
    }
    return out;
}

BPSolution basis_pursuit_block(const Eigen::MatrixXd& A, const Eigen::MatrixXd& f, const BPOptions& opts) {
    if (f.rows() != A.rows())
        throw DimensionMismatch("measurements have " + std::to_string(f.rows()) + " rows, operator has " +
                                std::to_string(A.rows()));
    detail::require(opts.tol > 0.0, "tolerance must be positive");
    detail::require(A.cols() >= 1 && f.cols() >= 1, "empty basis pursuit problem");
    const Eigen::Index N = A.cols();
    const std::size_t max_iter = opts.max_iter ? opts.max_iter : 50 * static_cast<std::size_t>(N);
    const double feas_tol = opts.tol * std::max(1.0, f.norm());

    BPSolution sol;
    sol.blocks = Eigen::MatrixXd::Zero(N, f.cols());
    if (f.norm() == 0.0) {
        sol.converged = true;
        return sol;
    }

    // Affine projection P(v) = x0 + v - V_r V_r^T v with x0 the minimum-norm solution.
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cutoff = sv.size() ? sv(0) * 1e-12 * static_cast<double>(std::max(A.rows(), N)) : 0.0;
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    const Eigen::MatrixXd Vr = svd.matrixV().leftCols(rank);
    const Eigen::MatrixXd Ur = svd.matrixU().leftCols(rank);
    const Eigen::MatrixXd x0 = Vr * (sv.head(rank).cwiseInverse().asDiagonal() * (Ur.transpose() * f));
    if ((A * x0 - f).norm() > feas_tol) {
        sol.residual_norm = f.norm();
        return sol;
    }
    if (rank == N) {
        sol.blocks = x0;
        sol.residual_norm = (A * x0 - f).norm();
        sol.objective = block_l1(x0);
        sol.converged = true;
        return sol;
    }
    auto project = [&](const Eigen::MatrixXd& v) -> Eigen::MatrixXd { return x0 + v - Vr * (Vr.transpose() * v); };

    double rho = static_cast<double>(N) / std::max(block_l1(x0), 1e-300);
    Eigen::MatrixXd z = x0;
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(N, f.cols());
    Eigen::MatrixXd x;
    double objective = block_l1(z);
    constexpr double kBalance = 10.0;
    const std::size_t adaptive_iterations = std::min<std::size_t>(500, max_iter / 5);

    std::size_t it = 0;
    for (; it < max_iter; ++it) {
        x = project(z - u);
        Eigen::MatrixXd z_new = block_soft_threshold(x + u, 1.0 / rho);
        u += x - z_new;
        const double primal = (x - z_new).norm();
        const double dual = rho * (z_new - z).norm();
        z = std::move(z_new);

        const double new_objective = block_l1(z);
        const double change = std::abs(new_objective - objective) / std::max(1.0, new_objective);
        objective = new_objective;
        const double residual = (A * z - f).norm();
        if (opts.progress) opts.progress(it + 1, residual, objective);
        if (residual <= feas_tol && change <= opts.tol && primal <= opts.tol * std::max(1.0, x.norm())) {
            ++it;
            sol.converged = true;
            break;
        }
        // Every so often try to finish exactly on the current support.
        if ((it + 1) % 50 == 0) {
            Eigen::MatrixXd polished = z;
            const Polish p = polish(A, f, feas_tol, polished);
            const bool settled = p == Polish::Accepted && change <= 1e-6 &&
                                 block_l1(polished) <= objective * (1.0 + opts.tol) + 1e-15;
            if (p == Polish::Certified || settled) {
                z = std::move(polished);
                ++it;
                sol.converged = true;
                break;
            }
        }
        // Residual balancing only early on: a fixed penalty afterwards keeps
        // the usual ADMM convergence guarantee.
        if (it >= adaptive_iterations) continue;
        if (primal > kBalance * dual) {
            rho *= 2.0;
            u /= 2.0;
        } else if (dual > kBalance * primal) {
            rho /= 2.0;
            u *= 2.0;
        }
    }
    // Out of budget: prefer a feasible point, the support solve or else the projection.
    if (!sol.converged && polish(A, f, feas_tol, z) == Polish::Rejected && x.size()) z = std::move(x);

    sol.blocks = std::move(z);
    sol.iterations = it;
    sol.residual_norm = (A * sol.blocks - f).norm();
    sol.objective = block_l1(sol.blocks);
    return sol;
}

BPSolution basis_pursuit_block(const SketchOperator& A, const Measurements& f, const BPOptions& opts) {
    return basis_pursuit_block(A.matrix(), f.blocks, opts);
}

TestFunction unknown_reconstruct(const BPSolution& sol, const IndexSet& lambda) {
    return TestFunction::expansion(CoefficientVector(lambda, sol.blocks));
}

double rnsp_c1(double rho) {
    detail::require(rho > 0.0 && rho < 1.0, "rNSP constant needs 0 < rho < 1");
    return 2.0 * (1.0 + rho) / (1.0 - rho);
}

double rnsp_c2(double rho) {
    detail::require(rho > 0.0 && rho < 1.0, "rNSP constant needs 0 < rho < 1");
    return 2.0 * (1.0 + rho) * (1.0 + rho) / (1.0 - rho);
}

RnspBounds rnsp_error_bounds(double rho, std::size_t s, double sigma_s_1) {
    detail::require(s >= 1, "sparsity must be positive");
    detail::require(sigma_s_1 >= 0.0, "best s-term error must be non-negative");
    return {rnsp_c1(rho) * sigma_s_1, rnsp_c2(rho) * sigma_s_1 / std::sqrt(static_cast<double>(s))};
}

double block_best_s_term_l1(const Eigen::MatrixXd& blocks, std::size_t s) {
    std::vector<double> norms(static_cast<std::size_t>(blocks.rows()));
    for (Eigen::Index i = 0; i < blocks.rows(); ++i) norms[static_cast<std::size_t>(i)] = blocks.row(i).norm();
    std::sort(norms.begin(), norms.end(), std::greater<>());
    double sum = 0.0;
    for (std::size_t i = norms.size(); i-- > s;) sum += norms[i];
    return sum;
}

}  // namespace holowidths
