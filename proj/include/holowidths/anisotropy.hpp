// Anisotropy sequences b = (b_1, b_2, ...): a finite head followed by either
// zeros or an algebraic tail b_i = scale * i^(-alpha) in the global index i.
#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace holowidths {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Tail {
    enum class Kind { Zero, Algebraic };
    Kind kind = Kind::Zero;
    double alpha = 0.0;
    double scale = 0.0;

    static Tail zero() { return {}; }
    static Tail algebraic(double alpha, double scale);
    friend bool operator==(const Tail&, const Tail&) = default;
};

class AnisotropySequence {
public:
    AnisotropySequence() = default;
    /// Throws PreconditionError on negative or non-finite entries.
    explicit AnisotropySequence(std::vector<double> head, Tail tail = Tail::zero());

    [[nodiscard]] const std::vector<double>& head() const noexcept { return head_; }
    [[nodiscard]] const Tail& tail() const noexcept { return tail_; }
    [[nodiscard]] std::size_t head_size() const noexcept { return head_.size(); }
    /// b_i for 1-based i, including tail entries.
    [[nodiscard]] double operator[](std::size_t i) const;
    [[nodiscard]] bool has_tail() const noexcept {
        return tail_.kind == Tail::Kind::Algebraic && tail_.scale > 0.0;
    }

    /// {"head":[...], "tail":{"kind":"zero"|"algebraic","alpha":a,"scale":c}}
    [[nodiscard]] std::string to_json() const;
    static AnisotropySequence from_json(std::string_view text);

    friend bool operator==(const AnisotropySequence&, const AnisotropySequence&) = default;

private:
    std::vector<double> head_;
    Tail tail_;
};

/// (sum b_i^p)^(1/p), or sup for p = infinity. DivergenceError when alpha*p <= 1.
[[nodiscard]] double lp_norm(const AnisotropySequence& b, double p);
/// l^p norm of the minimal monotone majorant.
[[nodiscard]] double monotone_lp_norm(const AnisotropySequence& b, double p);
/// l^q norm of b with its s largest entries removed (ties broken by index).
[[nodiscard]] double best_s_term_error(const AnisotropySequence& b, std::size_t s, double q);
/// ||b||_p (m+1)^(1/2-1/p), for 0 < p < 2.
[[nodiscard]] double stechkin_bound(const AnisotropySequence& b, double p, std::size_t m);

/// 2m copies of (2m)^(-1/p).
[[nodiscard]] AnisotropySequence make_flat_b(std::size_t m, double p);

/// b_i = scale * i^(-1/p_star), i = 1..dims.
[[nodiscard]] AnisotropySequence make_algebraic_b(double p_star, double scale, std::size_t dims);

enum class SlowGrowth {
    LogSquared,             // log^2(n+1)
    LogTimesLogLogSquared,  // log(n+1) (log log(n+1))^2
    Log,                    // log(n+1): sum 1/(n g(n)) diverges
};

[[nodiscard]] double slow_growth(SlowGrowth g, double n);
[[nodiscard]] std::string_view to_string(SlowGrowth g);
[[nodiscard]] SlowGrowth slow_growth_from_string(std::string_view name);

struct LogSequence {
    AnisotropySequence b;   // b_i = c (n g(n))^(-1/p) with n = i + index_shift
    std::size_t index_shift = 0;
    double c_pg = 0.0;
    double series_sum = 0.0;       // sum over n of 1/(n g(n))
    double tail_mass = 0.0;        // sum of b_i^p beyond the head
    double normalization_error = 0.0;
};

/// Log-weighted sequence with ||b||_p = 1 (head + tail). Requires cutoff >= 1000.
/// Throws DivergenceError when sum 1/(n g(n)) is not numerically Cauchy.
[[nodiscard]] LogSequence make_log_b(double p, SlowGrowth g, std::size_t cutoff);

}  // namespace holowidths
