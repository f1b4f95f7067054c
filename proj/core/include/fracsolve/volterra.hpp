#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fracsolve/frac_ops.hpp"
#include "fracsolve/grid.hpp"

namespace fracsolve {

/// Controls one fixed-point solve.
struct PicardOptions {
    double tol = 1e-8;
    int max_iter = 200;
    /// N of the stopping norm sup e^{-N t} |.|; 0 selects the plain sup norm.
    double weight = 0.0;
    /// Consecutive growth steps of the difference norm before declaring
    /// divergence.
    int divergence_window = 5;
};

/// Outcome of a fixed-point solve: the converged (or last) iterate plus
/// convergence diagnostics.  converged implies the final difference norm is
/// at most the tolerance.
struct SolveReport {
    GridFn solution;
    int iterations = 0;
    std::vector<double> diff_norms;
    /// Geometric mean of consecutive difference ratios; 0 when fewer than two
    /// differences were recorded.
    double contraction_factor = 0.0;
    /// Norm of u - A u after the final iterate, in the stopping norm.
    double residual = 0.0;
    bool converged = false;
    std::vector<std::string> warnings;
};

/// Generic Picard driver: repeatedly applies `sweep` starting from `initial`,
/// stopping when the successive difference drops to opts.tol or max_iter is
/// reached.  Throws divergence_error (with the difference trace) after
/// opts.divergence_window consecutive growth steps, and evaluation_error when
/// a sweep produces a non-finite value.
SolveReport picard_iterate(GridFn initial,
                           const std::function<void(const GridFn&, std::vector<double>&)>& sweep,
                           const PicardOptions& opts);

/// A weakly singular Volterra problem of the second kind,
///   u(t) = u0 + (1/Gamma(alpha)) int_0^t (t-s)^{alpha-1} F(s, u(s)) ds,
/// discretized on a (possibly graded) grid over [0, horizon].
struct VolterraProblem {
    FracOrder order;
    double u0 = 0.0;
    double horizon = 1.0;
    std::function<double(double, double)> integrand;  // F(s, u)
    GridPolicy grid;
};

/// Picard iteration from the constant initial iterate u0.
SolveReport picard_solve(const VolterraProblem& problem, const PicardOptions& opts);
SolveReport picard_solve(const VolterraProblem& problem, double tol, int max_iter);

/// Abel equation of the second kind,
///   f(x) = int_0^x k(x, s) g(s) / (x - s)^alpha ds + g(x),
/// solved for g by the iteration g <- f - K g with product integration of the
/// weakly singular factor.  f is tabulated on the solution grid; k must be
/// bounded on the triangle 0 <= s <= x <= T.
SolveReport abel_second_kind(const GridFn& f, const std::function<double(double, double)>& kernel,
                             FracOrder order, const PicardOptions& opts);
SolveReport abel_second_kind(const GridFn& f, const std::function<double(double, double)>& kernel,
                             FracOrder order, double tol, int max_iter);

/// Abel equation of the first kind with the convolution kernel
/// k = 1/Gamma(1-alpha), i.e. f = I^{1-alpha} g: inverts analytically as
/// g = D^{1-alpha} f.  Requires f(0) = 0 (beyond roundoff slack the data is
/// inconsistent with a continuous solution).
GridFn abel_first_kind_convolution(const GridFn& f, FracOrder order);

}  // namespace fracsolve
