#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fracsolve {

/// Fractional order in (0, 1).  Validated on construction.
struct FracOrder {
    double alpha;
    FracOrder(double a);  // NOLINT: implicit by design, the invariant is checked
};

/// Grid generation law: n panels on [0, T] with nodes t_j = T (j/n)^gamma.
/// gamma = 1 is the uniform grid; gamma > 1 clusters nodes at the origin,
/// where the weakly singular kernels concentrate their error.
struct GridPolicy {
    std::size_t n = 1024;
    double gamma = 1.0;
};

/// Strictly increasing nodes from 0 to T following the grading law.
/// Throws domain_error for T <= 0, n < 2 or gamma < 1.
std::vector<double> make_grid(double T, const GridPolicy& policy);

/// A real function tabulated on a strictly increasing node set; the carrier
/// for solutions, sources and operator outputs.  Invariants (checked on
/// construction): at least 2 nodes, nodes strictly increasing, values finite,
/// equal lengths.
class GridFn {
public:
    GridFn(std::vector<double> nodes, std::vector<double> values);

    static GridFn sample(std::vector<double> nodes, const std::function<double(double)>& fn);
    static GridFn constant(std::vector<double> nodes, double value);

    std::span<const double> nodes() const noexcept { return nodes_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return nodes_.size(); }

    double node(std::size_t i) const { return nodes_[i]; }
    double value(std::size_t i) const { return values_[i]; }

    /// Linear interpolation; t must lie within [nodes.front(), nodes.back()].
    double operator()(double t) const;

    double sup_norm() const;
    /// sup over nodes of e^{-N t} |u(t)|.
    double weighted_sup_norm(double N) const;

private:
    std::vector<double> nodes_;
    std::vector<double> values_;
};

/// Largest |a - b| over the (shared) nodes.  Throws validation_error if the
/// two functions do not live on identical node sets.
double sup_distance(const GridFn& a, const GridFn& b);

/// Largest e^{-N t} |a - b| over the shared nodes.
double weighted_sup_distance(const GridFn& a, const GridFn& b, double N);

}  // namespace fracsolve
