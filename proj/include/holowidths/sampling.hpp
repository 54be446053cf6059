// Sampling operators: exact Legendre coefficients on a chosen set (known
// anisotropy) and a Gaussian sketch of the coefficients on a hyperbolic cross
// (unknown anisotropy).
#pragma once

#include "holowidths/anisotropy.hpp"
#include "holowidths/coefficients.hpp"
#include "holowidths/quadrature.hpp"

#include <cstdint>
#include <iosfwd>

namespace holowidths {

/// 80.098 (2 sqrt 2 + 1)^2: the measurement constant that the recovery guarantee needs.
inline const double kTheoreticalMeasurementConstant = 80.098 * (2.0 * 1.4142135623730951 + 1.0) *
                                                      (2.0 * 1.4142135623730951 + 1.0);

/// m x N matrix with i.i.d. N(0, 1/m) entries regenerated from a seed; column j
/// corresponds to the j-th member of the index set.
class SketchOperator {
public:
    SketchOperator(std::size_t rows, IndexSet set, std::uint64_t seed);

    [[nodiscard]] std::size_t rows() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
    [[nodiscard]] std::size_t cols() const noexcept { return static_cast<std::size_t>(matrix_.cols()); }
    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] const IndexSet& index_set() const noexcept { return set_; }
    [[nodiscard]] const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }

    /// Blockwise product: (N x K) -> (m x K).
    [[nodiscard]] Eigen::MatrixXd apply(const Eigen::MatrixXd& blocks) const;
    /// Requires coeffs to live on this operator's index set.
    [[nodiscard]] Eigen::MatrixXd apply(const CoefficientVector& coeffs) const;

    /// Header line `m N seed`, then the index set; the matrix is not stored.
    void write(std::ostream& os) const;
    static SketchOperator read(std::istream& is);

private:
    IndexSet set_;
    std::uint64_t seed_;
    Eigen::MatrixXd matrix_;
};

struct Measurements {
    Eigen::MatrixXd blocks;  // m x K

    /// CSV with header `row,k,value`.
    void write_csv(std::ostream& os) const;
};

/// Anchored set of the s multi-indices with the smallest
/// u_nu = sum_k nu_k log(1 + 1/max(b~_k, 1e-12)), ties in graded order.
[[nodiscard]] IndexSet choose_set_known(const AnisotropySequence& b, std::size_t s);

/// Legendre coefficients of f on S.
[[nodiscard]] CoefficientVector known_sample(const TestFunction& f, const IndexSet& S,
                                             const QuadratureOptions& opts = {});
[[nodiscard]] TestFunction known_reconstruct(CoefficientVector coeffs);

[[nodiscard]] SketchOperator gaussian_sketch(std::size_t m, IndexSet set, std::uint64_t seed);

/// ceil(m / log(m)^2), natural log, for m >= 3.
[[nodiscard]] std::uint32_t search_space_order(std::size_t m);

struct UnknownSample {
    Measurements measurements;
    SketchOperator sketch;
    CoefficientVector coefficients;  // c_Lambda, by quadrature
};

/// Lambda = hyperbolic_cross(search_space_order(m)), measurements A c_Lambda.
[[nodiscard]] UnknownSample unknown_sample(const TestFunction& f, std::size_t m, std::uint64_t seed,
                                           const QuadratureOptions& opts = {});
/// Same with c_Lambda already computed (on hyperbolic_cross(search_space_order(m))).
[[nodiscard]] UnknownSample unknown_sample(CoefficientVector c_lambda, std::size_t m, std::uint64_t seed);

/// ceil(c (s log(2N/s) + log(2/eps))), with s log(2N/s) = 0 for s = 0.
[[nodiscard]] std::size_t measurement_bound(std::size_t s, std::size_t N, double eps, double c_const = 1.0);

}  // namespace holowidths
