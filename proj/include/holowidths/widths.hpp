// Closed-form widths of weighted l^p balls and the lower bounds for the
// sampling numbers of anisotropic holomorphic classes.
#pragma once

#include "holowidths/anisotropy.hpp"
#include "holowidths/legendre.hpp"

#include <string_view>
#include <vector>

namespace holowidths {

struct WidthQuery {
    std::vector<double> weights;  // strictly positive, length N
    std::size_t m = 0;            // 0 <= m < N
    double p = 2.0;
    double q = 1.0;
};

/// Kolmogorov width of the weighted l^p ball in l^q, 1 <= q < p <= infinity:
/// the l^r norm of the N-m smallest weights, r = pq/(p-q) (r = q for p = infinity).
[[nodiscard]] double stesin_width(const WidthQuery& query);

/// (sum_{j>m} b_{pi(j)}^2)^(1/2) over the N largest entries of b.
[[nodiscard]] double discrete_width_chain(const AnisotropySequence& b, std::size_t N, std::size_t m);

/// The N largest entries of b in nonincreasing order (zeros when b runs out).
[[nodiscard]] std::vector<double> top_entries(const AnisotropySequence& b, std::size_t N);

/// (1/2)^(2/p-1/q) min{1, (2p/log(3^8 e)) log(eN/m)/m}^(1/p-1/q), 0 < p <= 1, p < q.
[[nodiscard]] double gelfand_lower_bound(std::size_t N, std::size_t m, double p, double q);

enum class Measure { Uniform, Chebyshev };

[[nodiscard]] Moments measure_moments(Measure measure);
/// "uniform" or "chebyshev"; PreconditionError otherwise.
[[nodiscard]] Moments measure_moments(std::string_view name);

/// sigma / (1 + (1+|tau|) ||b||_1).
[[nodiscard]] double known_constant(const AnisotropySequence& b, Moments moments);
/// Same with ||b||_p in place of ||b||_1.
[[nodiscard]] double known_constant_lp(const AnisotropySequence& b, double p, Moments moments);
/// known_constant(b) * sigma_m(b)_2.
[[nodiscard]] double theta_lower_bound_known(const AnisotropySequence& b, std::size_t m, Moments moments);

/// sigma / (2 + |tau|).
[[nodiscard]] double unknown_constant(Moments moments);
/// unknown_constant * 2^(1/2 - 2/p), 0 < p < 1. Independent of m.
[[nodiscard]] double theta_lower_bound_unknown(double p, Moments moments);

}  // namespace holowidths
