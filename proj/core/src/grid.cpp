#include "fracsolve/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "fracsolve/errors.hpp"

namespace fracsolve {

FracOrder::FracOrder(double a) : alpha(a) {
    if (!(a > 0.0) || !(a < 1.0)) {
        throw domain_error("fractional order must lie in (0, 1), got " + std::to_string(a));
    }
}

std::vector<double> make_grid(double T, const GridPolicy& policy) {
    if (!(T > 0.0)) {
        throw domain_error("make_grid: horizon must be positive, got " + std::to_string(T));
    }
    if (policy.n < 2) {
        throw domain_error("make_grid: need at least 2 panels, got " + std::to_string(policy.n));
    }
    if (!(policy.gamma >= 1.0)) {
        throw domain_error("make_grid: grading exponent must be >= 1, got " +
                           std::to_string(policy.gamma));
    }
    std::vector<double> nodes(policy.n + 1);
    const double inv_n = 1.0 / static_cast<double>(policy.n);
    for (std::size_t j = 0; j <= policy.n; ++j) {
        const double frac = static_cast<double>(j) * inv_n;
        nodes[j] = (policy.gamma == 1.0) ? T * frac : T * std::pow(frac, policy.gamma);
    }
    nodes.front() = 0.0;
    nodes.back() = T;
    return nodes;
}

GridFn::GridFn(std::vector<double> nodes, std::vector<double> values)
    : nodes_(std::move(nodes)), values_(std::move(values)) {
    if (nodes_.size() < 2) {
        throw validation_error("GridFn: need at least 2 nodes");
    }
    if (nodes_.size() != values_.size()) {
        throw validation_error("GridFn: nodes and values must have equal length");
    }
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
        if (!(nodes_[i] < nodes_[i + 1])) {
            throw validation_error("GridFn: nodes must be strictly increasing (index " +
                                   std::to_string(i) + ")");
        }
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw validation_error("GridFn: non-finite value at index " + std::to_string(i));
        }
    }
}

GridFn GridFn::sample(std::vector<double> nodes, const std::function<double(double)>& fn) {
    std::vector<double> values(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        values[i] = fn(nodes[i]);
    }
    return GridFn(std::move(nodes), std::move(values));
}

GridFn GridFn::constant(std::vector<double> nodes, double value) {
    std::vector<double> values(nodes.size(), value);
    return GridFn(std::move(nodes), std::move(values));
}

double GridFn::operator()(double t) const {
    if (t < nodes_.front() || t > nodes_.back()) {
        throw domain_error("GridFn: evaluation point " + std::to_string(t) +
                           " outside the tabulated range");
    }
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
    if (it == nodes_.end()) {
        return values_.back();
    }
    const std::size_t hi = static_cast<std::size_t>(it - nodes_.begin());
    if (hi == 0) {
        return values_.front();
    }
    const std::size_t lo = hi - 1;
    const double w = (t - nodes_[lo]) / (nodes_[hi] - nodes_[lo]);
    return values_[lo] + w * (values_[hi] - values_[lo]);
}

double GridFn::sup_norm() const {
    double m = 0.0;
    for (double v : values_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

double GridFn::weighted_sup_norm(double N) const {
    double m = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        m = std::max(m, std::exp(-N * nodes_[i]) * std::abs(values_[i]));
    }
    return m;
}

namespace {

void require_same_nodes(const GridFn& a, const GridFn& b) {
    if (a.size() != b.size()) {
        throw validation_error("grid functions live on different node sets");
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.node(i) != b.node(i)) {
            throw validation_error("grid functions live on different node sets");
        }
    }
}

}  // namespace

double sup_distance(const GridFn& a, const GridFn& b) {
    require_same_nodes(a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a.value(i) - b.value(i)));
    }
    return m;
}

double weighted_sup_distance(const GridFn& a, const GridFn& b, double N) {
    require_same_nodes(a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::exp(-N * a.node(i)) * std::abs(a.value(i) - b.value(i)));
    }
    return m;
}

}  // namespace fracsolve
