/**
 * @file multiindex.hpp
 * @brief Finitely supported multi-indices and finite index sets.
 *
 * A MultiIndex is stored sparsely as (dimension, exponent) pairs sorted by
 * dimension; dimensions are 1-based and zero exponents are never stored.
 * IndexSet keeps its members in graded order: by total degree first, then
 * lexicographically descending on the dense exponent vector, so that
 * 0, e1, e2, ..., 2e1, e1+e2, ... is the iteration order.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace holowidths {

using Dim = std::uint32_t;
using Exponent = std::uint32_t;

class MultiIndex {
public:
    struct Entry {
        Dim dim;
        Exponent exponent;
        friend bool operator==(const Entry&, const Entry&) = default;
    };

    /// The zero multi-index.
    MultiIndex() = default;

    /// Builds from arbitrary (dim, exponent) pairs; zero exponents are dropped.
    /// Throws PreconditionError on dim 0 or a repeated dimension.
    explicit MultiIndex(std::vector<Entry> entries);

    /// Dense form: exponents[k] is the exponent of dimension k+1.
    static MultiIndex from_dense(std::span<const Exponent> exponents);
    static MultiIndex unit(Dim dim);

    /// Exponent in dimension `dim` (0 when absent).
    [[nodiscard]] Exponent operator[](Dim dim) const noexcept;

    [[nodiscard]] std::span<const Entry> entries() const noexcept { return entries_; }
    [[nodiscard]] std::size_t support_size() const noexcept { return entries_.size(); }
    [[nodiscard]] bool is_zero() const noexcept { return entries_.empty(); }
    [[nodiscard]] std::uint64_t total_degree() const noexcept;
    /// Largest dimension in the support, 0 for the zero index.
    [[nodiscard]] Dim max_dim() const noexcept;
    /// j when this index equals e_j.
    [[nodiscard]] std::optional<Dim> unit_dim() const noexcept;

    /// Product over the support of (exponent + 1).
    [[nodiscard]] std::uint64_t hyperbolic_weight() const noexcept;

    [[nodiscard]] MultiIndex incremented(Dim dim) const;
    /// Requires a positive exponent in `dim`.
    [[nodiscard]] MultiIndex decremented(Dim dim) const;

    /// Componentwise <=.
    [[nodiscard]] bool precedes_or_equals(const MultiIndex& other) const noexcept;

    [[nodiscard]] std::vector<Exponent> dense(Dim dims) const;

    /// Text form: space-separated `dim:exp` pairs, empty for the zero index.
    [[nodiscard]] std::string to_string() const;
    static MultiIndex parse(std::string_view text);

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

private:
    std::vector<Entry> entries_;
};

/// Strict weak order used for every IndexSet: graded, then descending lex on
/// the dense vector.
struct GradedOrder {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const noexcept;
};

struct MultiIndexHash {
    std::size_t operator()(const MultiIndex& nu) const noexcept;
};

/// Immutable ordered set of distinct multi-indices.
class IndexSet {
public:
    IndexSet() = default;
    /// Sorts into graded order. Throws PreconditionError on duplicates.
    explicit IndexSet(std::vector<MultiIndex> members);

    [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
    [[nodiscard]] bool empty() const noexcept { return members_.empty(); }
    [[nodiscard]] const MultiIndex& operator[](std::size_t i) const { return members_[i]; }
    [[nodiscard]] auto begin() const noexcept { return members_.begin(); }
    [[nodiscard]] auto end() const noexcept { return members_.end(); }
    [[nodiscard]] const std::vector<MultiIndex>& members() const noexcept { return members_; }

    [[nodiscard]] bool contains(const MultiIndex& nu) const;
    [[nodiscard]] std::optional<std::size_t> position(const MultiIndex& nu) const;

    /// Sorted union of the supports.
    [[nodiscard]] std::vector<Dim> active_dims() const;
    /// Largest exponent of any member in dimension `dim`.
    [[nodiscard]] Exponent max_degree(Dim dim) const;
    [[nodiscard]] Dim max_dim() const;

    [[nodiscard]] bool is_subset_of(const IndexSet& other) const;

    /// One member per line in set order; the zero index is an empty line.
    void write(std::ostream& os) const;
    [[nodiscard]] std::string serialize() const;
    static IndexSet read(std::istream& is);
    static IndexSet parse(std::string_view text);

    friend bool operator==(const IndexSet& a, const IndexSet& b) { return a.members_ == b.members_; }

private:
    std::vector<MultiIndex> members_;
    std::unordered_map<MultiIndex, std::size_t, MultiIndexHash> lookup_;
};

/// { nu : prod_{k: nu_k != 0} (nu_k + 1) <= n, nu_k = 0 for k >= n }.
/// Contains every anchored set of size at most n.
[[nodiscard]] IndexSet hyperbolic_cross(std::uint32_t n);

/// e * n^(2 + log(n-1)/log 2), valid for n >= 2.
[[nodiscard]] double hyperbolic_cross_cardinality_bound(std::uint32_t n);

[[nodiscard]] bool is_lower(const IndexSet& set);
[[nodiscard]] bool is_anchored(const IndexSet& set);

/// Smallest lower set containing `seeds`.
[[nodiscard]] IndexSet downward_closure(std::span<const MultiIndex> seeds);

/// z~_i = sup_{j >= i} |z_j|; entries past the end are taken as zero.
[[nodiscard]] std::vector<double> monotone_majorant(std::span<const double> z);

/// Minimal anchored majorant of a family of block norms indexed by a lower set.
/// Non-unit nu: max of norms over mu >= nu. Unit e_j: max over mu >= e_i, i >= j.
/// Output is aligned with `set`. Throws PreconditionError if the set is not lower.
[[nodiscard]] std::vector<double> anchored_majorant(const IndexSet& set,
                                                    std::span<const double> block_norms);

/// Random anchored set of `size` members grown from {0} by adding a uniformly
/// chosen element of the anchored frontier at each step. Deterministic in `seed`.
[[nodiscard]] IndexSet random_anchored_set(std::size_t size, std::uint64_t seed);

}  // namespace holowidths
