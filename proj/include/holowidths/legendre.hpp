// Orthonormal Legendre polynomials for the uniform probability measure on
// [-1,1], Gauss-Legendre rules and evaluable test functions.
#pragma once

#include "holowidths/anisotropy.hpp"
#include "holowidths/multiindex.hpp"

#include <Eigen/Core>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace holowidths {

class CoefficientVector;

/// sqrt(2n+1) P_n(y). Throws DomainError for |y| > 1.
[[nodiscard]] double legendre_eval(std::uint32_t degree, double y);

/// Psi_0(y), ..., Psi_max_degree(y) in one recurrence pass; no domain check.
void legendre_values(std::uint32_t max_degree, double y, std::span<double> out);

/// Product over supp(nu) of Psi_{nu_k}(y_k); y[k-1] holds coordinate k.
/// Throws PreconditionError when y is shorter than nu.max_dim().
[[nodiscard]] double tensor_legendre_eval(const MultiIndex& nu, std::span<const double> y);

struct QuadratureRule {
    std::vector<double> nodes;    // ascending, in [-1,1]
    std::vector<double> weights;  // sum to 1
};

/// q-point Gauss-Legendre rule normalized to the uniform probability measure.
[[nodiscard]] QuadratureRule gauss_legendre_rule(std::uint32_t q);

/// Shared, cached copy of gauss_legendre_rule(q).
[[nodiscard]] const QuadratureRule& cached_gauss_legendre_rule(std::uint32_t q);

/// First moment tau and standard deviation sigma of a probability measure on [-1,1].
struct Moments {
    double tau = 0.0;
    double sigma = 1.0;
};

using Codomain = Eigen::VectorXd;

/// Evaluable map [-1,1]^d -> R^K with optional ground truth.
class TestFunction {
public:
    using Evaluator = std::function<void(std::span<const double> y, Eigen::Ref<Codomain> out)>;

    TestFunction(std::size_t active_dims, std::size_t codomain_dim, Evaluator evaluate);

    [[nodiscard]] std::size_t active_dims() const noexcept { return active_dims_; }
    [[nodiscard]] std::size_t codomain_dim() const noexcept { return codomain_dim_; }

    /// y must supply at least active_dims coordinates.
    [[nodiscard]] Codomain operator()(std::span<const double> y) const;
    void evaluate_into(std::span<const double> y, Eigen::Ref<Codomain> out) const;

    [[nodiscard]] const std::shared_ptr<const CoefficientVector>& truth() const noexcept { return truth_; }
    [[nodiscard]] const std::optional<AnisotropySequence>& anisotropy() const noexcept { return anisotropy_; }
    [[nodiscard]] std::optional<double> sup_bound() const noexcept { return sup_bound_; }

    TestFunction& with_truth(CoefficientVector coeffs);
    TestFunction& with_anisotropy(AnisotropySequence b);
    TestFunction& with_sup_bound(double bound);

    /// Truncated expansion sum c_nu Psi_nu; truth is the expansion itself.
    static TestFunction expansion(CoefficientVector coeffs);
    static TestFunction zero(std::size_t codomain_dim);
    static TestFunction constant(Codomain v);

    /// alpha f + beta g; truth attached when both have one.
    friend TestFunction linear_combination(double alpha, const TestFunction& f, double beta,
                                           const TestFunction& g);

private:
    std::size_t active_dims_;
    std::size_t codomain_dim_;
    Evaluator evaluate_;
    std::shared_ptr<const CoefficientVector> truth_;
    std::optional<AnisotropySequence> anisotropy_;
    std::optional<double> sup_bound_;
};

TestFunction linear_combination(double alpha, const TestFunction& f, double beta, const TestFunction& g);

/// f(y) = sum_i c_i v (y_i - tau)/sigma. Truth coefficients in the orthonormal
/// Legendre basis: at e_i, c_i v/(sigma sqrt 3); at 0, -tau sum c_i v/sigma.
/// sup_bound = (||v||/sigma)(1 + (|tau|+1)||c||_1). Throws PreconditionError on zero v.
[[nodiscard]] TestFunction order_one_test_function(std::span<const double> c, const Codomain& v,
                                                   Moments moments);

/// As above, and checks |c_i| <= b_i before attaching b.
[[nodiscard]] TestFunction order_one_test_function(std::span<const double> c, const Codomain& v,
                                                   Moments moments, AnisotropySequence b);

}  // namespace holowidths
