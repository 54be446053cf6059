#include "holowidths/multiindex.hpp"

#include "holowidths/error.hpp"

#include <algorithm>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

namespace holowidths {

MultiIndex::MultiIndex(std::vector<Entry> entries) {
    std::erase_if(entries, [](const Entry& e) { return e.exponent == 0; });
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.dim < b.dim; });
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].dim == 0) throw PreconditionError("multi-index dimensions are 1-based");
        if (i > 0 && entries[i].dim == entries[i - 1].dim)
            throw PreconditionError("multi-index has a repeated dimension");
    }
    entries_ = std::move(entries);
}

MultiIndex MultiIndex::from_dense(std::span<const Exponent> exponents) {
    std::vector<Entry> entries;
    for (std::size_t k = 0; k < exponents.size(); ++k)
        if (exponents[k] != 0) entries.push_back({static_cast<Dim>(k + 1), exponents[k]});
    MultiIndex nu;
    nu.entries_ = std::move(entries);
    return nu;
}

MultiIndex MultiIndex::unit(Dim dim) {
    if (dim == 0) throw PreconditionError("multi-index dimensions are 1-based");
    MultiIndex nu;
    nu.entries_.push_back({dim, 1});
    return nu;
}

Exponent MultiIndex::operator[](Dim dim) const noexcept {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), dim,
                               [](const Entry& e, Dim d) { return e.dim < d; });
    return (it != entries_.end() && it->dim == dim) ? it->exponent : 0;
}

std::uint64_t MultiIndex::total_degree() const noexcept {
    std::uint64_t s = 0;
    for (const auto& e : entries_) s += e.exponent;
    return s;
}

Dim MultiIndex::max_dim() const noexcept { return entries_.empty() ? 0 : entries_.back().dim; }

std::optional<Dim> MultiIndex::unit_dim() const noexcept {
    if (entries_.size() == 1 && entries_.front().exponent == 1) return entries_.front().dim;
    return std::nullopt;
}

std::uint64_t MultiIndex::hyperbolic_weight() const noexcept {
    std::uint64_t w = 1;
    for (const auto& e : entries_) w *= static_cast<std::uint64_t>(e.exponent) + 1;
    return w;
}

MultiIndex MultiIndex::incremented(Dim dim) const {
    if (dim == 0) throw PreconditionError("multi-index dimensions are 1-based");
    MultiIndex nu = *this;
    auto it = std::lower_bound(nu.entries_.begin(), nu.entries_.end(), dim,
                               [](const Entry& e, Dim d) { return e.dim < d; });
    if (it != nu.entries_.end() && it->dim == dim)
        ++it->exponent;
    else
        nu.entries_.insert(it, Entry{dim, 1});
    return nu;
}

MultiIndex MultiIndex::decremented(Dim dim) const {
    MultiIndex nu = *this;
    auto it = std::lower_bound(nu.entries_.begin(), nu.entries_.end(), dim,
                               [](const Entry& e, Dim d) { return e.dim < d; });
    if (it == nu.entries_.end() || it->dim != dim)
        throw PreconditionError("cannot decrement a zero exponent");
    if (--it->exponent == 0) nu.entries_.erase(it);
    return nu;
}

bool MultiIndex::precedes_or_equals(const MultiIndex& other) const noexcept {
    for (const auto& e : entries_)
        if (other[e.dim] < e.exponent) return false;
    return true;
}

std::vector<Exponent> MultiIndex::dense(Dim dims) const {
    std::vector<Exponent> out(dims, 0);
    for (const auto& e : entries_)
        if (e.dim <= dims) out[e.dim - 1] = e.exponent;
    return out;
}

std::string MultiIndex::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(entries_[i].dim);
        out += ':';
        out += std::to_string(entries_[i].exponent);
    }
    return out;
}

namespace {

template <class T>
T parse_unsigned(std::string_view s, std::string_view context) {
    T value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError("invalid number '" + std::string(s) + "' in " + std::string(context));
    return value;
}

}  // namespace

MultiIndex MultiIndex::parse(std::string_view text) {
    std::vector<Entry> entries;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
        if (pos >= text.size()) break;
        std::size_t end = text.find_first_of(" \t", pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view token = text.substr(pos, end - pos);
        std::size_t colon = token.find(':');
        if (colon == std::string_view::npos)
            throw ParseError("expected dim:exp, got '" + std::string(token) + "'");
        Entry e{parse_unsigned<Dim>(token.substr(0, colon), token),
                parse_unsigned<Exponent>(token.substr(colon + 1), token)};
        if (e.exponent == 0) throw ParseError("zero exponents are not stored: '" + std::string(token) + "'");
        entries.push_back(e);
        pos = end;
    }
    try {
        return MultiIndex(std::move(entries));
    } catch (const PreconditionError& e) {
        throw ParseError(e.what());
    }
}

bool GradedOrder::operator()(const MultiIndex& a, const MultiIndex& b) const noexcept {
    const auto da = a.total_degree();
    const auto db = b.total_degree();
    if (da != db) return da < db;
    auto ea = a.entries();
    auto eb = b.entries();
    std::size_t i = 0, j = 0;
    while (i < ea.size() && j < eb.size()) {
        if (ea[i].dim == eb[j].dim) {
            if (ea[i].exponent != eb[j].exponent) return ea[i].exponent > eb[j].exponent;
            ++i;
            ++j;
        } else {
            // The index with the earlier nonzero dimension is lexicographically larger.
            return ea[i].dim < eb[j].dim;
        }
    }
    return i < ea.size() && j == eb.size();
}

std::size_t MultiIndexHash::operator()(const MultiIndex& nu) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto& e : nu.entries()) {
        h ^= std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(e.dim) << 32) | e.exponent) +
             0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

IndexSet::IndexSet(std::vector<MultiIndex> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end(), GradedOrder{});
    lookup_.reserve(members_.size());
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (!lookup_.emplace(members_[i], i).second)
            throw PreconditionError("duplicate multi-index '" + members_[i].to_string() + "'");
    }
}

bool IndexSet::contains(const MultiIndex& nu) const { return lookup_.contains(nu); }

std::optional<std::size_t> IndexSet::position(const MultiIndex& nu) const {
    auto it = lookup_.find(nu);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

std::vector<Dim> IndexSet::active_dims() const {
    std::set<Dim> dims;
    for (const auto& nu : members_)
        for (const auto& e : nu.entries()) dims.insert(e.dim);
    return {dims.begin(), dims.end()};
}

Exponent IndexSet::max_degree(Dim dim) const {
    Exponent best = 0;
    for (const auto& nu : members_) best = std::max(best, nu[dim]);
    return best;
}

Dim IndexSet::max_dim() const {
    Dim best = 0;
    for (const auto& nu : members_) best = std::max(best, nu.max_dim());
    return best;
}

bool IndexSet::is_subset_of(const IndexSet& other) const {
    return std::all_of(members_.begin(), members_.end(),
                       [&](const MultiIndex& nu) { return other.contains(nu); });
}

void IndexSet::write(std::ostream& os) const {
    for (const auto& nu : members_) os << nu.to_string() << '\n';
}

std::string IndexSet::serialize() const {
    std::ostringstream os;
    write(os);
    return os.str();
}

IndexSet IndexSet::read(std::istream& is) {
    std::vector<MultiIndex> members;
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        members.push_back(MultiIndex::parse(line));
    }
    try {
        return IndexSet(std::move(members));
    } catch (const PreconditionError& e) {
        throw ParseError(e.what());
    }
}

IndexSet IndexSet::parse(std::string_view text) {
    std::istringstream is{std::string(text)};
    return read(is);
}

namespace {

void hyperbolic_cross_dfs(std::uint32_t n, Dim first_dim, std::uint64_t weight,
                          std::vector<MultiIndex::Entry>& prefix, std::vector<MultiIndex>& out) {
    out.emplace_back(prefix);
    for (Dim k = first_dim; k < n; ++k) {
        if (weight * 2 > n) break;
        for (Exponent e = 1; weight * (e + 1) <= n; ++e) {
            prefix.push_back({k, e});
            hyperbolic_cross_dfs(n, k + 1, weight * (e + 1), prefix, out);
            prefix.pop_back();
        }
    }
}

}  // namespace

IndexSet hyperbolic_cross(std::uint32_t n) {
    detail::require(n >= 1, "hyperbolic_cross requires n >= 1");
    std::vector<MultiIndex> members;
    std::vector<MultiIndex::Entry> prefix;
    hyperbolic_cross_dfs(n, 1, 1, prefix, members);
    return IndexSet(std::move(members));
}

double hyperbolic_cross_cardinality_bound(std::uint32_t n) {
    detail::require(n >= 2, "cardinality bound requires n >= 2");
    const double nd = n;
    return std::numbers::e * std::pow(nd, 2.0 + std::log(nd - 1.0) / std::numbers::ln2);
}

bool is_lower(const IndexSet& set) {
    for (const auto& nu : set)
        for (const auto& e : nu.entries())
            if (!set.contains(nu.decremented(e.dim))) return false;
    return true;
}

bool is_anchored(const IndexSet& set) {
    if (!is_lower(set)) return false;
    for (const auto& nu : set) {
        auto j = nu.unit_dim();
        if (j && *j > 1 && !set.contains(MultiIndex::unit(*j - 1))) return false;
    }
    return true;
}

IndexSet downward_closure(std::span<const MultiIndex> seeds) {
    std::unordered_map<MultiIndex, bool, MultiIndexHash> seen;
    std::vector<MultiIndex> stack(seeds.begin(), seeds.end());
    std::vector<MultiIndex> members;
    while (!stack.empty()) {
        MultiIndex nu = std::move(stack.back());
        stack.pop_back();
        if (!seen.emplace(nu, true).second) continue;
        for (const auto& e : nu.entries()) stack.push_back(nu.decremented(e.dim));
        members.push_back(std::move(nu));
    }
    return IndexSet(std::move(members));
}

std::vector<double> monotone_majorant(std::span<const double> z) {
    std::vector<double> out(z.size());
    double running = 0.0;
    for (std::size_t i = z.size(); i-- > 0;) {
        running = std::max(running, std::abs(z[i]));
        out[i] = running;
    }
    return out;
}

std::vector<double> anchored_majorant(const IndexSet& set, std::span<const double> block_norms) {
    if (block_norms.size() != set.size())
        throw DimensionMismatch("anchored_majorant: one norm per index required");
    if (!is_lower(set)) throw PreconditionError("anchored_majorant requires a lower index set");

    // Up-set suprema by dynamic programming from the highest graded members down:
    // in a lower set every mu >= nu is reachable by single-coordinate increments.
    const std::size_t n = set.size();
    const Dim dims = set.max_dim();
    std::vector<double> up(n);
    for (std::size_t i = n; i-- > 0;) {
        double best = block_norms[i];
        for (Dim k = 1; k <= dims; ++k) {
            if (auto pos = set.position(set[i].incremented(k))) best = std::max(best, up[*pos]);
        }
        up[i] = best;
    }

    // Suffix maxima over unit vectors present: anchored value of e_j.
    std::vector<double> unit_suffix(static_cast<std::size_t>(dims) + 2, 0.0);
    for (Dim j = dims; j >= 1; --j) {
        double here = 0.0;
        if (auto pos = set.position(MultiIndex::unit(j))) here = up[*pos];
        unit_suffix[j] = std::max(unit_suffix[j + 1], here);
    }

    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto j = set[i].unit_dim();
        out[i] = j ? unit_suffix[*j] : up[i];
    }
    return out;
}

IndexSet random_anchored_set(std::size_t size, std::uint64_t seed) {
    detail::require(size >= 1, "random_anchored_set requires size >= 1");
    boost::random::mt19937_64 rng(seed);
    std::vector<MultiIndex> members{MultiIndex{}};
    std::unordered_map<MultiIndex, bool, MultiIndexHash> in_set{{MultiIndex{}, true}};
    Dim max_dim = 0;

    auto keeps_anchored = [&](const MultiIndex& cand) {
        for (const auto& e : cand.entries())
            if (!in_set.contains(cand.decremented(e.dim))) return false;
        if (auto j = cand.unit_dim(); j && *j > 1) return in_set.contains(MultiIndex::unit(*j - 1));
        return true;
    };

    while (members.size() < size) {
        std::set<MultiIndex, GradedOrder> frontier;
        for (const auto& nu : members) {
            for (Dim k = 1; k <= max_dim + 1; ++k) {
                MultiIndex cand = nu.incremented(k);
                if (!in_set.contains(cand) && keeps_anchored(cand)) frontier.insert(std::move(cand));
            }
        }
        boost::random::uniform_int_distribution<std::size_t> pick(0, frontier.size() - 1);
        auto it = std::next(frontier.begin(), static_cast<std::ptrdiff_t>(pick(rng)));
        max_dim = std::max(max_dim, it->max_dim());
        in_set.emplace(*it, true);
        members.push_back(*it);
    }
    return IndexSet(std::move(members));
}

}  // namespace holowidths
