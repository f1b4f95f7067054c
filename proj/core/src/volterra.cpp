#include "fracsolve/volterra.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "fracsolve/errors.hpp"
#include "fracsolve/gamma.hpp"

namespace fracsolve {

namespace {

double norm_distance(std::span<const double> nodes, std::span<const double> a,
                     std::span<const double> b, double weight) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = std::abs(a[i] - b[i]);
        m = std::max(m, weight > 0.0 ? std::exp(-weight * nodes[i]) * d : d);
    }
    return m;
}

}  // namespace

SolveReport picard_iterate(GridFn initial,
                           const std::function<void(const GridFn&, std::vector<double>&)>& sweep,
                           const PicardOptions& opts) {
    if (!(opts.tol > 0.0)) {
        throw domain_error("picard_iterate: tolerance must be positive");
    }
    if (opts.max_iter < 1) {
        throw domain_error("picard_iterate: need at least one iteration");
    }
    const std::vector<double> nodes(initial.nodes().begin(), initial.nodes().end());
    std::vector<double> current(initial.values().begin(), initial.values().end());
    std::vector<double> next(current.size());

    std::vector<double> diffs;
    diffs.reserve(16);
    int growth = 0;
    bool converged = false;
    int iterations = 0;

    GridFn scratch = initial;
    for (int it = 1; it <= opts.max_iter; ++it) {
        scratch = GridFn(nodes, current);
        sweep(scratch, next);
        for (std::size_t i = 0; i < next.size(); ++i) {
            if (std::isnan(next[i])) {
                throw evaluation_error("picard_iterate: sweep produced NaN at node index " +
                                       std::to_string(i));
            }
            if (std::isinf(next[i])) {
                // Overflow on the first sweep points at the data, afterwards
                // at runaway growth.
                if (it == 1) {
                    throw evaluation_error(
                        "picard_iterate: sweep produced an infinite value at node index " +
                        std::to_string(i));
                }
                diffs.push_back(std::numeric_limits<double>::infinity());
                throw divergence_error("picard_iterate: iterates overflowed", diffs);
            }
        }
        const double d = norm_distance(nodes, next, current, opts.weight);
        diffs.push_back(d);
        current.swap(next);
        iterations = it;
        if (d <= opts.tol) {
            converged = true;
            break;
        }
        if (diffs.size() >= 2) {
            const double prev = diffs[diffs.size() - 2];
            growth = (d > prev || std::isinf(d)) ? growth + 1 : 0;
            if (growth >= opts.divergence_window) {
                throw divergence_error("picard_iterate: difference norm grew for " +
                                           std::to_string(growth) + " consecutive iterations",
                                       diffs);
            }
        }
    }

    // One extra application measures the fixed-point residual.
    scratch = GridFn(nodes, current);
    sweep(scratch, next);
    const double residual = norm_distance(nodes, next, current, opts.weight);

    double factor = 0.0;
    if (diffs.size() >= 2 && diffs.front() > 0.0) {
        factor = std::pow(diffs.back() / diffs.front(),
                          1.0 / static_cast<double>(diffs.size() - 1));
    }

    return SolveReport{GridFn(nodes, current), iterations, std::move(diffs), factor,
                       residual, converged, {}};
}

SolveReport picard_solve(const VolterraProblem& problem, const PicardOptions& opts) {
    if (!(problem.horizon > 0.0)) {
        throw domain_error("picard_solve: horizon must be positive");
    }
    if (!problem.integrand) {
        throw validation_error("picard_solve: integrand is not set");
    }
    std::vector<double> nodes = make_grid(problem.horizon, problem.grid);
    ProductIntegrator quad(nodes, problem.order);
    const double u0 = problem.u0;
    const auto& F = problem.integrand;

    auto sweep = [&](const GridFn& u, std::vector<double>& out) {
        const auto ts = u.nodes();
        const auto uv = u.values();
        std::vector<double> fv(ts.size());
        for (std::size_t i = 0; i < ts.size(); ++i) {
            fv[i] = F(ts[i], uv[i]);
        }
        out = quad.apply(fv);
        for (double& v : out) {
            v += u0;
        }
    };
    return picard_iterate(GridFn::constant(nodes, u0), sweep, opts);
}

SolveReport picard_solve(const VolterraProblem& problem, double tol, int max_iter) {
    PicardOptions opts;
    opts.tol = tol;
    opts.max_iter = max_iter;
    return picard_solve(problem, opts);
}

SolveReport abel_second_kind(const GridFn& f,
                             const std::function<double(double, double)>& kernel,
                             FracOrder order, const PicardOptions& opts) {
    if (!kernel) {
        throw validation_error("abel_second_kind: kernel is not set");
    }
    std::vector<double> nodes(f.nodes().begin(), f.nodes().end());
    // The singular factor (x-s)^{-alpha} is the order-(1-alpha) kernel; the
    // integrator folds in 1/Gamma(1-alpha), so scale it back out.
    ProductIntegrator quad(nodes, FracOrder(1.0 - order.alpha));
    const double gamma_scale = gamma_fn(1.0 - order.alpha);

    auto sweep = [&](const GridFn& g, std::vector<double>& out) {
        const auto xs = g.nodes();
        const auto gv = g.values();
        out.assign(xs.size(), 0.0);
        std::vector<double> row(xs.size());
        out[0] = f.value(0);
        for (std::size_t i = 1; i < xs.size(); ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                row[j] = kernel(xs[i], xs[j]) * gv[j];
            }
            out[i] = f.value(i) - gamma_scale * quad.apply_row(i, row);
        }
    };
    return picard_iterate(f, sweep, opts);
}

SolveReport abel_second_kind(const GridFn& f,
                             const std::function<double(double, double)>& kernel,
                             FracOrder order, double tol, int max_iter) {
    PicardOptions opts;
    opts.tol = tol;
    opts.max_iter = max_iter;
    return abel_second_kind(f, kernel, order, opts);
}

GridFn abel_first_kind_convolution(const GridFn& f, FracOrder order) {
    const double slack = 1e-9 * std::max(1.0, f.sup_norm());
    if (std::abs(f.value(0)) > slack) {
        throw consistency_error(
            "abel_first_kind_convolution: f(0) = " + std::to_string(f.value(0)) +
            " is nonzero, no continuous solution exists");
    }
    return rl_derivative(f, FracOrder(1.0 - order.alpha));
}

}  // namespace fracsolve
