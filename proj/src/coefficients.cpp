#include "holowidths/coefficients.hpp"

#include "holowidths/csv.hpp"
#include "holowidths/error.hpp"
#include "holowidths/legendre.hpp"

#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <string>

namespace holowidths {

CoefficientVector::CoefficientVector(IndexSet set, Eigen::MatrixXd blocks)
    : set_(std::move(set)), blocks_(std::move(blocks)) {
    if (static_cast<std::size_t>(blocks_.rows()) != set_.size())
        throw DimensionMismatch("coefficient blocks: " + std::to_string(blocks_.rows()) + " rows for " +
                                std::to_string(set_.size()) + " indices");
    if (!blocks_.allFinite()) throw PreconditionError("coefficient blocks must be finite");
}

CoefficientVector CoefficientVector::zeros(IndexSet set, std::size_t codomain_dim) {
    Eigen::MatrixXd blocks = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(set.size()),
                                                   static_cast<Eigen::Index>(codomain_dim));
    return CoefficientVector(std::move(set), std::move(blocks));
}

std::optional<Eigen::VectorXd> CoefficientVector::block(const MultiIndex& nu) const {
    auto pos = set_.position(nu);
    if (!pos) return std::nullopt;
    return Eigen::VectorXd(blocks_.row(static_cast<Eigen::Index>(*pos)).transpose());
}

std::vector<double> CoefficientVector::block_norms() const {
    std::vector<double> out(size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = block(i).norm();
    return out;
}

double CoefficientVector::norm(double p) const {
    detail::require(p > 0.0, "norm exponent must be positive");
    const auto norms = block_norms();
    if (std::isinf(p)) {
        double m = 0.0;
        for (double x : norms) m = std::max(m, x);
        return m;
    }
    double s = 0.0;
    for (double x : norms) s += std::pow(x, p);
    return std::pow(s, 1.0 / p);
}

CoefficientVector CoefficientVector::restricted_to(const IndexSet& target) const {
    CoefficientVector out = zeros(target, codomain_dim());
    for (std::size_t i = 0; i < target.size(); ++i)
        if (auto pos = set_.position(target[i]))
            out.blocks_.row(static_cast<Eigen::Index>(i)) = blocks_.row(static_cast<Eigen::Index>(*pos));
    return out;
}

Eigen::VectorXd CoefficientVector::evaluate(std::span<const double> y) const {
    const Dim dims = set_.max_dim();
    if (dims > y.size())
        throw PreconditionError("point has " + std::to_string(y.size()) + " coordinates, expansion needs " +
                                std::to_string(dims));
    std::map<Dim, std::vector<double>> tables;
    for (const auto& nu : set_) {
        for (const auto& e : nu.entries()) {
            auto& t = tables[e.dim];
            if (t.size() < e.exponent + 1) t.resize(e.exponent + 1);
        }
    }
    for (auto& [d, t] : tables) {
        const double yd = y[d - 1];
        if (!(std::abs(yd) <= 1.0)) throw DomainError("coordinate outside [-1,1]");
        legendre_values(static_cast<std::uint32_t>(t.size() - 1), yd, t);
    }
    Eigen::VectorXd out = Eigen::VectorXd::Zero(blocks_.cols());
    for (std::size_t i = 0; i < set_.size(); ++i) {
        double psi = 1.0;
        for (const auto& e : set_[i].entries()) psi *= tables[e.dim][e.exponent];
        out += psi * blocks_.row(static_cast<Eigen::Index>(i)).transpose();
    }
    return out;
}

void CoefficientVector::write_csv(std::ostream& os) const {
    CsvWriter w(os, {"index", "k", "value"});
    for (std::size_t i = 0; i < size(); ++i)
        for (Eigen::Index k = 0; k < blocks_.cols(); ++k)
            w << set_[i].to_string() << static_cast<long long>(k) << blocks_(static_cast<Eigen::Index>(i), k);
}

CoefficientVector CoefficientVector::read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError("coefficient CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "index,k,value") throw ParseError("coefficient CSV header must be 'index,k,value'");

    std::vector<std::pair<MultiIndex, std::map<std::size_t, double>>> rows;
    std::unordered_map<MultiIndex, std::size_t, MultiIndexHash> where;
    std::size_t k_max = 0;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 3) throw ParseError("coefficient CSV row needs 3 fields: '" + line + "'");
        MultiIndex nu = MultiIndex::parse(fields[0]);
        const auto k = static_cast<std::size_t>(parse_double(fields[1]));
        const double value = parse_double(fields[2]);
        auto [it, fresh] = where.emplace(nu, rows.size());
        if (fresh) rows.push_back({nu, {}});
        if (!rows[it->second].second.emplace(k, value).second) throw ParseError("duplicate coefficient entry");
        k_max = std::max(k_max, k + 1);
    }
    std::vector<MultiIndex> members;
    for (const auto& r : rows) members.push_back(r.first);
    IndexSet set(std::move(members));
    CoefficientVector out = zeros(set, k_max);
    for (const auto& [nu, comps] : rows) {
        const auto pos = static_cast<Eigen::Index>(*set.position(nu));
        for (const auto& [k, v] : comps) out.blocks_(pos, static_cast<Eigen::Index>(k)) = v;
    }
    return out;
}

double l2_distance(const CoefficientVector& a, const CoefficientVector& b) {
    if (a.codomain_dim() != b.codomain_dim()) throw DimensionMismatch("codomain dimensions differ");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto other = b.index_set().position(a.index_set()[i]);
        Eigen::VectorXd diff = a.block(i).transpose();
        if (other) diff -= b.block(*other).transpose();
        s += diff.squaredNorm();
    }
    for (std::size_t j = 0; j < b.size(); ++j)
        if (!a.index_set().contains(b.index_set()[j])) s += b.block(j).squaredNorm();
    return std::sqrt(s);
}

}  // namespace holowidths
