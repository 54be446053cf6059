#include "holowidths/quadrature.hpp"

#include "holowidths/error.hpp"
#include "holowidths/parallel.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace holowidths {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::uint32_t dim_order(std::uint32_t order, Exponent max_degree) {
    return std::max<std::uint32_t>(std::max<std::uint32_t>(order, 1), max_degree + 1);
}

void check_budget(double nodes, double budget) {
    if (nodes > budget) {
        std::ostringstream os;
        os << "quadrature needs " << nodes << " evaluations, budget is " << budget;
        throw BudgetExceeded(os.str());
    }
}

// Psi_s(x_i) for every node i of a rule and degree s <= max_degree.
std::vector<std::vector<double>> psi_table(const QuadratureRule& rule, Exponent max_degree) {
    std::vector<std::vector<double>> t(rule.nodes.size(), std::vector<double>(max_degree + 1));
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) legendre_values(max_degree, rule.nodes[i], t[i]);
    return t;
}

// One level of the sum factorization: the distinct suffixes
// (nu_{d_j}, ..., nu_{d_D}) of the members, each stored as its exponent in
// d_j and the id of its own suffix one level down.
struct Level {
    Dim dim = 0;
    Exponent max_degree = 0;
    const QuadratureRule* rule = nullptr;
    std::vector<std::vector<double>> psi;
    std::vector<std::pair<Exponent, std::size_t>> suffixes;
};

class TensorUnionIntegrator {
public:
    TensorUnionIntegrator(const TestFunction& f, const IndexSet& set, std::uint32_t order)
        : f_(f), K_(f.codomain_dim()), point_size_(std::max<std::size_t>(f.active_dims(), set.max_dim())) {
        const auto dims = set.active_dims();
        levels_.resize(dims.size());
        for (std::size_t j = 0; j < dims.size(); ++j) {
            levels_[j].dim = dims[j];
            levels_[j].max_degree = set.max_degree(dims[j]);
            levels_[j].rule = &cached_gauss_legendre_rule(dim_order(order, levels_[j].max_degree));
            levels_[j].psi = psi_table(*levels_[j].rule, levels_[j].max_degree);
        }
        // Suffix ids, innermost level first; the empty suffix below the last level has id 0.
        std::vector<std::size_t> id(set.size(), 0);
        for (std::size_t j = dims.size(); j-- > 0;) {
            std::map<std::pair<Exponent, std::size_t>, std::size_t> seen;
            for (std::size_t i = 0; i < set.size(); ++i) {
                const std::pair<Exponent, std::size_t> key{set[i][dims[j]], id[i]};
                auto [it, fresh] = seen.emplace(key, levels_[j].suffixes.size());
                if (fresh) levels_[j].suffixes.push_back(key);
                id[i] = it->second;
            }
        }
        member_row_ = std::move(id);
    }

    double node_count() const {
        double n = 1.0;
        for (const auto& l : levels_) n *= static_cast<double>(l.rule->nodes.size());
        return n;
    }

    Eigen::MatrixXd run() const {
        const auto rows = [&](std::size_t j) {
            return static_cast<Eigen::Index>(j < levels_.size() ? levels_[j].suffixes.size() : 1);
        };
        const auto K = static_cast<Eigen::Index>(K_);
        RowMatrix top;
        if (levels_.empty()) {
            std::vector<double> y(point_size_, 0.0);
            Eigen::VectorXd v(K);
            f_.evaluate_into(y, v);
            top = v.transpose();
        } else {
            // Split the outermost level across workers; partial sums are reduced
            // in node order so the result does not depend on the thread count.
            const auto& outer = levels_[0];
            const std::size_t q0 = outer.rule->nodes.size();
            std::vector<RowMatrix> partial(q0);
            parallel_for(q0, [&](std::size_t i) {
                std::vector<double> y(point_size_, 0.0);
                std::vector<RowMatrix> acc(levels_.size() + 1);
                for (std::size_t j = 1; j <= levels_.size(); ++j) acc[j].resize(rows(j), K);
                Eigen::VectorXd leaf(K);
                y[outer.dim - 1] = outer.rule->nodes[i];
                const RowMatrix& inner = accumulate(1, y, acc, leaf);
                RowMatrix out = RowMatrix::Zero(rows(0), K);
                add_level(outer, i, inner, out);
                partial[i] = std::move(out);
            });
            top = RowMatrix::Zero(rows(0), K);
            for (const auto& p : partial) top += p;
        }
        Eigen::MatrixXd coeffs(static_cast<Eigen::Index>(member_row_.size()), K);
        for (std::size_t i = 0; i < member_row_.size(); ++i)
            coeffs.row(static_cast<Eigen::Index>(i)) = top.row(static_cast<Eigen::Index>(member_row_[i]));
        return coeffs;
    }

private:
    static void add_level(const Level& level, std::size_t node, const RowMatrix& inner, RowMatrix& out) {
        const double w = level.rule->weights[node];
        const auto& psi = level.psi[node];
        for (std::size_t s = 0; s < level.suffixes.size(); ++s) {
            const auto [e, child] = level.suffixes[s];
            out.row(static_cast<Eigen::Index>(s)) += (w * psi[e]) * inner.row(static_cast<Eigen::Index>(child));
        }
    }

    const RowMatrix& accumulate(std::size_t j, std::vector<double>& y, std::vector<RowMatrix>& acc,
                                Eigen::VectorXd& leaf) const {
        RowMatrix& out = acc[j];
        if (j == levels_.size()) {
            f_.evaluate_into(y, leaf);
            out.row(0) = leaf.transpose();
            return out;
        }
        out.setZero();
        const auto& level = levels_[j];
        for (std::size_t i = 0; i < level.rule->nodes.size(); ++i) {
            y[level.dim - 1] = level.rule->nodes[i];
            add_level(level, i, accumulate(j + 1, y, acc, leaf), out);
        }
        y[level.dim - 1] = 0.0;
        return out;
    }

    const TestFunction& f_;
    std::size_t K_;
    std::size_t point_size_;
    std::vector<Level> levels_;
    std::vector<std::size_t> member_row_;
};

double per_index_nodes(const MultiIndex& nu, std::uint32_t order) {
    double n = 1.0;
    for (const auto& e : nu.entries()) n *= dim_order(order, e.exponent);
    return n;
}

Eigen::MatrixXd per_index(const TestFunction& f, const IndexSet& set, std::uint32_t order) {
    const std::size_t point_size = std::max<std::size_t>(f.active_dims(), set.max_dim());
    const auto K = static_cast<Eigen::Index>(f.codomain_dim());
    Eigen::MatrixXd coeffs(static_cast<Eigen::Index>(set.size()), K);
    parallel_for(set.size(), [&](std::size_t m) {
        const MultiIndex& nu = set[m];
        const auto entries = nu.entries();
        std::vector<const QuadratureRule*> rules;
        std::vector<std::vector<std::vector<double>>> psi;
        for (const auto& e : entries) {
            rules.push_back(&cached_gauss_legendre_rule(dim_order(order, e.exponent)));
            psi.push_back(psi_table(*rules.back(), e.exponent));
        }
        std::vector<double> y(point_size, 0.0);
        std::vector<std::size_t> node(entries.size(), 0);
        Eigen::VectorXd value(K);
        Eigen::VectorXd sum = Eigen::VectorXd::Zero(K);
        while (true) {
            double weight = 1.0;
            for (std::size_t k = 0; k < entries.size(); ++k) {
                y[entries[k].dim - 1] = rules[k]->nodes[node[k]];
                weight *= rules[k]->weights[node[k]] * psi[k][node[k]][entries[k].exponent];
            }
            f.evaluate_into(y, value);
            sum += weight * value;
            std::size_t k = 0;
            while (k < entries.size() && ++node[k] == rules[k]->nodes.size()) node[k++] = 0;
            if (k == entries.size()) break;
        }
        coeffs.row(static_cast<Eigen::Index>(m)) = sum.transpose();
    });
    return coeffs;
}

}  // namespace

double quadrature_node_count(const IndexSet& set, const QuadratureOptions& opts) {
    if (opts.grid == GridKind::PerIndex) {
        double n = 0.0;
        for (const auto& nu : set) n += per_index_nodes(nu, opts.order);
        return n;
    }
    double n = 1.0;
    for (Dim d : set.active_dims()) n *= dim_order(opts.order, set.max_degree(d));
    return n;
}

CoefficientVector compute_coefficients(const TestFunction& f, const IndexSet& set, const QuadratureOptions& opts) {
    check_budget(quadrature_node_count(set, opts), opts.node_budget);
    if (set.empty()) return CoefficientVector::zeros(set, f.codomain_dim());
    if (opts.grid == GridKind::PerIndex) return CoefficientVector(set, per_index(f, set, opts.order));
    return CoefficientVector(set, TensorUnionIntegrator(f, set, opts.order).run());
}

double squared_l2_norm(const TestFunction& f, std::size_t dims, std::uint32_t order, double node_budget) {
    detail::require(order >= 1, "quadrature order must be positive");
    check_budget(std::pow(static_cast<double>(order), static_cast<double>(dims)), node_budget);
    const auto& rule = cached_gauss_legendre_rule(order);
    std::vector<double> y(std::max(dims, f.active_dims()), 0.0);
    std::vector<std::size_t> node(dims, 0);
    Eigen::VectorXd value(static_cast<Eigen::Index>(f.codomain_dim()));
    double sum = 0.0;
    while (true) {
        double w = 1.0;
        for (std::size_t k = 0; k < dims; ++k) {
            y[k] = rule.nodes[node[k]];
            w *= rule.weights[node[k]];
        }
        f.evaluate_into(y, value);
        sum += w * value.squaredNorm();
        std::size_t k = 0;
        while (k < dims && ++node[k] == order) node[k++] = 0;
        if (k == dims) break;
    }
    return sum;
}

Eigen::MatrixXd gram_matrix(const IndexSet& set, std::uint32_t order) {
    const auto n = static_cast<Eigen::Index>(set.size());
    const TestFunction basis = TestFunction::expansion(CoefficientVector(set, Eigen::MatrixXd::Identity(n, n)));
    return compute_coefficients(basis, set, {order, GridKind::TensorUnion, 1e8}).blocks();
}

}  // namespace holowidths
