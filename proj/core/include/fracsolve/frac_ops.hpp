#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fracsolve/grid.hpp"

namespace fracsolve {

/// Riemann-Liouville fractional integral I^alpha of a tabulated function,
/// sampled on the same nodes.
///
/// Product integration: on each panel the regular factor is replaced by its
/// linear interpolant and the moments of (t - s)^{alpha - 1} are integrated
/// in closed form, so the kernel singularity at s = t is never evaluated.
/// Panel sums run in fixed ascending order; output node 0 is exactly 0.
GridFn rl_integral(const GridFn& g, FracOrder order);

/// Riemann-Liouville fractional derivative D^alpha = d/dt of I^{1-alpha},
/// with the outer derivative taken by a three-point nonuniform stencil
/// (one-sided at the endpoints).
GridFn rl_derivative(const GridFn& g, FracOrder order);

/// Caputo derivative: the Riemann-Liouville derivative of g - g(t_0).
/// Annihilates constants, so classical initial conditions are meaningful.
GridFn caputo_derivative(const GridFn& g, FracOrder order);

/// First derivative of tabulated values by the three-point nonuniform stencil
/// used throughout: parabola through each node triple, differentiated at the
/// node (one-sided parabolas at both endpoints).  Needs at least 3 nodes.
std::vector<double> derivative_3pt(std::span<const double> nodes, std::span<const double> values);

/// Repeated application of I^alpha on a fixed grid.  The per-panel quadrature
/// weights (with 1/Gamma(alpha) folded in) are precomputed once, so each
/// apply() is a triangular multiply-add sweep.  Grids with more than
/// kTabulationLimit panels skip the table and recompute weights on the fly.
class ProductIntegrator {
public:
    static constexpr std::size_t kTabulationLimit = 4096;

    ProductIntegrator(std::vector<double> nodes, FracOrder order);

    std::span<const double> nodes() const noexcept { return nodes_; }
    double order() const noexcept { return alpha_; }

    /// (I^alpha phi)(t_i) for all i, phi given by its nodal values.
    std::vector<double> apply(std::span<const double> values) const;

    /// (I^alpha phi)(t_i) for one output node; phi[j] indexes the grid nodes
    /// and must cover at least indices 0..i.  Used when the regular factor
    /// depends on the output node, as with kernels k(x, s).
    double apply_row(std::size_t i, std::span<const double> phi) const;

private:
    void check_row(std::size_t i, std::span<const double> phi) const;
    double row_direct(std::size_t i, std::span<const double> phi) const;

    std::vector<double> nodes_;
    double alpha_;
    double inv_gamma_;
    bool tabulated_ = false;
    // Flattened strict lower triangle: row i holds weights for panels
    // [t_j, t_{j+1}], j < i, as (left, right) pairs against phi_j, phi_{j+1}.
    std::vector<double> wl_, wr_;

    static std::size_t row_base(std::size_t i) { return i * (i - 1) / 2; }
};

}  // namespace fracsolve
