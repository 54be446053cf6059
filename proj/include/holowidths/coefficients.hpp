// Coefficient vectors: one R^K block per member of an index set.
#pragma once

#include "holowidths/multiindex.hpp"

#include <Eigen/Core>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace holowidths {

class CoefficientVector {
public:
    CoefficientVector() = default;
    /// blocks has one row per member of `set` and K columns.
    CoefficientVector(IndexSet set, Eigen::MatrixXd blocks);
    static CoefficientVector zeros(IndexSet set, std::size_t codomain_dim);

    [[nodiscard]] const IndexSet& index_set() const noexcept { return set_; }
    [[nodiscard]] const Eigen::MatrixXd& blocks() const noexcept { return blocks_; }
    [[nodiscard]] Eigen::MatrixXd& blocks() noexcept { return blocks_; }
    [[nodiscard]] std::size_t size() const noexcept { return set_.size(); }
    [[nodiscard]] std::size_t codomain_dim() const noexcept { return static_cast<std::size_t>(blocks_.cols()); }

    [[nodiscard]] auto block(std::size_t i) const { return blocks_.row(static_cast<Eigen::Index>(i)); }
    /// Block at nu, or nullopt when nu is not in the set.
    [[nodiscard]] std::optional<Eigen::VectorXd> block(const MultiIndex& nu) const;

    [[nodiscard]] std::vector<double> block_norms() const;
    /// sum of block norms to the power p, to the power 1/p.
    [[nodiscard]] double norm(double p) const;

    /// Same coefficients on `target`; members absent here get zero blocks.
    [[nodiscard]] CoefficientVector restricted_to(const IndexSet& target) const;

    /// sum_nu c_nu Psi_nu(y).
    [[nodiscard]] Eigen::VectorXd evaluate(std::span<const double> y) const;

    /// CSV with header `index,k,value`, one row per (member, component).
    void write_csv(std::ostream& os) const;
    static CoefficientVector read_csv(std::istream& is);

private:
    IndexSet set_;
    Eigen::MatrixXd blocks_;
};

/// L^2 distance between the two expansions (Parseval over the union of supports).
[[nodiscard]] double l2_distance(const CoefficientVector& a, const CoefficientVector& b);

}  // namespace holowidths
