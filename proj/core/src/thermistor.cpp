#include "fracsolve/thermistor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "fracsolve/errors.hpp"
#include "fracsolve/gamma.hpp"

namespace fracsolve {

namespace {

constexpr double kDenominatorFloor = 1e-30;
constexpr double kRangeSlack = 1e-9;

double trapezoid(std::span<const double> nodes, std::span<const double> values) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        acc += 0.5 * (values[i] + values[i + 1]) * (nodes[i + 1] - nodes[i]);
    }
    return acc;
}

double checked_eval(const std::function<double(double)>& fn, double x, const char* what) {
    const double v = fn(x);
    if (!std::isfinite(v)) {
        throw evaluation_error(std::string(what) + " produced a non-finite value at " +
                               std::to_string(x));
    }
    return v;
}

double checked_eval2(const std::function<double(double, double)>& fn, double s, double u,
                     const char* what) {
    const double v = fn(s, u);
    if (!std::isfinite(v)) {
        throw evaluation_error(std::string(what) + " produced a non-finite value at (" +
                               std::to_string(s) + ", " + std::to_string(u) + ")");
    }
    return v;
}

void check_h1_samples(const std::function<double(double)>& f, double lo, double hi, double c1,
                      double c2, double Lf) {
    constexpr int kSamples = 128;
    double prev_u = lo;
    double prev_f = checked_eval(f, lo, "f");
    for (int i = 0; i <= kSamples; ++i) {
        const double u = lo + (hi - lo) * static_cast<double>(i) / kSamples;
        const double v = checked_eval(f, u, "f");
        if (v < c1 * (1.0 - kRangeSlack) - 1e-12 || v > c2 * (1.0 + kRangeSlack) + 1e-12) {
            throw hypothesis_error("f(" + std::to_string(u) + ") = " + std::to_string(v) +
                                   " leaves the asserted range [c1, c2]");
        }
        if (i > 0) {
            const double quotient = std::abs(v - prev_f) / (u - prev_u);
            if (quotient > Lf * (1.0 + 1e-6) + 1e-9) {
                throw hypothesis_error("sampled difference quotient " + std::to_string(quotient) +
                                       " of f exceeds the asserted Lipschitz constant");
            }
        }
        prev_u = u;
        prev_f = v;
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Riemann-Liouville problem on [0, T]
// ---------------------------------------------------------------------------

void validate(const RLSpec& spec) {
    if (!(spec.alpha > 0.0) || !(spec.alpha < 0.5)) {
        throw domain_error("RLSpec: alpha must lie in (0, 1/2), got " +
                           std::to_string(spec.alpha));
    }
    if (!(spec.lambda >= 0.0)) {
        throw domain_error("RLSpec: lambda must be nonnegative");
    }
    if (!(spec.T > 0.0)) {
        throw domain_error("RLSpec: horizon must be positive");
    }
    if (!(spec.weight_N > 0.0)) {
        throw domain_error("RLSpec: norm weight N must be positive");
    }
    if (!(spec.c1 > 0.0) || !(spec.c1 <= spec.c2)) {
        throw domain_error("RLSpec: need 0 < c1 <= c2");
    }
    if (!(spec.Lf >= 0.0)) {
        throw domain_error("RLSpec: Lipschitz constant must be nonnegative");
    }
    if (!spec.f) {
        throw validation_error("RLSpec: f is not set");
    }
}

void spot_check_hypotheses(const RLSpec& spec) {
    validate(spec);
    // The solution lives below the a priori bound; f is probed on a margin
    // beyond it.
    const double plain_bound = bound_rl(spec) * std::exp(spec.weight_N * spec.T);
    const double hi = std::max(1.0, 2.0 * plain_bound);
    check_h1_samples(spec.f, 0.0, hi, spec.c1, spec.c2, spec.Lf);
}

double uniqueness_threshold_rl(const RLSpec& spec) {
    validate(spec);
    if (spec.Lf == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    const double c1T = spec.c1 * spec.T;
    const double N = spec.weight_N;
    const double inner = 1.0 / (c1T * c1T) +
                         2.0 * spec.c2 * spec.c2 * spec.T * std::exp(N * spec.T) /
                             (c1T * c1T * c1T * c1T);
    return std::pow(N, 2.0 * spec.alpha) / (spec.Lf * inner);
}

double bound_rl(const RLSpec& spec) {
    validate(spec);
    const double c1T = spec.c1 * spec.T;
    const double N = spec.weight_N;
    double h_inf = 0.0;
    if (spec.h) {
        const std::vector<double> nodes = make_grid(spec.T, spec.grid);
        for (double t : nodes) {
            h_inf = std::max(h_inf, std::abs(checked_eval(spec.h, t, "h")));
        }
    }
    const double f0 = checked_eval(spec.f, 0.0, "f");
    const double numerator = spec.lambda / (c1T * c1T) * f0 + h_inf;
    const double na = std::pow(N, spec.alpha);
    const double growth = std::exp(spec.lambda * spec.Lf / (c1T * na * c1T * na));
    return numerator / std::pow(N, 2.0 * spec.alpha) * growth;
}

ThermistorResult solve_rl(const RLSpec& spec, const RLSolveOptions& options) {
    validate(spec);
    if (options.spot_check) {
        spot_check_hypotheses(spec);
    }
    const std::vector<double> nodes = make_grid(spec.T, spec.grid);
    const ProductIntegrator quad(nodes, FracOrder(2.0 * spec.alpha));
    std::vector<double> h_vals(nodes.size(), 0.0);
    if (spec.h) {
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            h_vals[i] = checked_eval(spec.h, nodes[i], "h");
        }
    }

    bool range_violated = false;
    std::vector<double> fv(nodes.size());
    std::vector<double> rhs(nodes.size());
    auto sweep = [&](const GridFn& u, std::vector<double>& out) {
        const auto uv = u.values();
        for (std::size_t i = 0; i < uv.size(); ++i) {
            fv[i] = checked_eval(spec.f, uv[i], "f");
            if (fv[i] < spec.c1 * (1.0 - kRangeSlack) || fv[i] > spec.c2 * (1.0 + kRangeSlack)) {
                range_violated = true;
            }
        }
        const double denom_root = trapezoid(nodes, fv);
        const double denom = denom_root * denom_root;
        if (denom < kDenominatorFloor) {
            throw singularity_error("solve_rl: nonlocal denominator collapsed to " +
                                    std::to_string(denom));
        }
        for (std::size_t i = 0; i < uv.size(); ++i) {
            rhs[i] = spec.lambda * fv[i] / denom + h_vals[i];
        }
        out = quad.apply(rhs);
    };

    PicardOptions popts = options.picard;
    popts.weight = spec.weight_N;
    SolveReport report =
        picard_iterate(GridFn::constant(nodes, options.initial_value), sweep, popts);
    if (range_violated) {
        report.warnings.push_back("iterates left the asserted range [c1, c2] of f");
    }

    BoundReport bounds;
    bounds.threshold = uniqueness_threshold_rl(spec);
    bounds.bound = bound_rl(spec);
    bounds.realized_norm = report.solution.weighted_sup_norm(spec.weight_N);
    bounds.satisfied = bounds.realized_norm <= bounds.bound * (1.0 + 1e-6);
    return ThermistorResult{std::move(report), bounds};
}

ThermistorResult solve_rl(const RLSpec& spec, double tol, int max_iter) {
    RLSolveOptions options;
    options.picard.tol = tol;
    options.picard.max_iter = max_iter;
    return solve_rl(spec, options);
}

WeightScan scan_weight_rl(const RLSpec& spec, std::span<const double> candidates) {
    static constexpr double kDefault[] = {0.5, 1.0, 2.0, 4.0, 8.0};
    if (candidates.empty()) {
        candidates = kDefault;
    }
    WeightScan scan;
    scan.best_threshold = -std::numeric_limits<double>::infinity();
    for (double N : candidates) {
        RLSpec probe = spec;
        probe.weight_N = N;
        const double threshold = uniqueness_threshold_rl(probe);
        scan.table.push_back({N, threshold});
        if (threshold > scan.best_threshold) {
            scan.best_threshold = threshold;
            scan.best_N = N;
        }
    }
    return scan;
}

// ---------------------------------------------------------------------------
// Caputo problem on the half axis
// ---------------------------------------------------------------------------

void validate(const CaputoSpec& spec) {
    if (!(spec.alpha > 0.0) || !(spec.alpha < 0.5)) {
        throw domain_error("CaputoSpec: alpha must lie in (0, 1/2)");
    }
    if (!(spec.lambda >= 0.0)) {
        throw domain_error("CaputoSpec: lambda must be nonnegative");
    }
    if (!(spec.c1 > 0.0) || !(spec.c1 <= spec.c2)) {
        throw domain_error("CaputoSpec: need 0 < c1 <= c2");
    }
    if (!(spec.Lf >= 0.0)) {
        throw domain_error("CaputoSpec: Lipschitz constant must be nonnegative");
    }
    if (!(spec.M > 0.0)) {
        throw domain_error("CaputoSpec: growth constant M must be positive");
    }
    if (!(spec.omega >= 2.0)) {
        throw domain_error("CaputoSpec: modulus exponent omega must be at least 2");
    }
    if (!(spec.ball_radius > 0.0)) {
        throw domain_error("CaputoSpec: ball radius must be positive");
    }
    if (!(spec.T > 0.0)) {
        throw domain_error("CaputoSpec: horizon must be positive");
    }
    if (!spec.f && !spec.nonlocal_override) {
        throw validation_error("CaputoSpec: f is not set");
    }
}

void spot_check_hypotheses(const CaputoSpec& spec, double horizon) {
    validate(spec);
    if (spec.nonlocal_override) {
        return;  // the hook bypasses f entirely
    }
    constexpr int kS = 32;
    constexpr int kU = 32;
    const double lo = spec.u0 - spec.ball_radius;
    const double hi = spec.u0 + spec.ball_radius;
    for (int i = 0; i <= kS; ++i) {
        const double s = horizon * static_cast<double>(i) / kS;
        double prev_u = lo;
        double prev_f = checked_eval2(spec.f, s, lo, "f");
        for (int j = 0; j <= kU; ++j) {
            const double u = lo + (hi - lo) * static_cast<double>(j) / kU;
            const double v = checked_eval2(spec.f, s, u, "f");
            if (v < spec.c1 * (1.0 - kRangeSlack) - 1e-12 ||
                v > spec.c2 * (1.0 + kRangeSlack) + 1e-12) {
                throw hypothesis_error("f(" + std::to_string(s) + ", " + std::to_string(u) +
                                       ") = " + std::to_string(v) +
                                       " leaves the asserted range [c1, c2]");
            }
            if (j > 0) {
                const double quotient = std::abs(v - prev_f) / (u - prev_u);
                if (quotient > spec.Lf * (1.0 + 1e-6) + 1e-9) {
                    throw hypothesis_error(
                        "sampled difference quotient of f(s, .) exceeds the asserted "
                        "Lipschitz constant at s = " +
                        std::to_string(s));
                }
            }
            prev_u = u;
            prev_f = v;
        }
    }
}

namespace {

double caputo_radius_raw(const CaputoSpec& spec) {
    if (spec.lambda == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    const double two_alpha = 2.0 * spec.alpha;
    const double base =
        spec.ball_radius * gamma_fn(two_alpha + 1.0) * spec.c1 * spec.c1 / (spec.lambda * spec.M);
    return std::pow(base, 1.0 / two_alpha);
}

/// Shared Picard core for the local solve (frozen_count = 0) and continuation
/// (frozen_count = size of the already-converged prefix, whose values stay
/// fixed while the new window is iterated).
SolveReport caputo_picard(const std::vector<double>& nodes, std::size_t frozen_count,
                          std::span<const double> frozen_values, const CaputoSpec& spec,
                          const PicardOptions& opts) {
    const ProductIntegrator quad(nodes, FracOrder(2.0 * spec.alpha));
    const std::size_t n = nodes.size();

    if (spec.nonlocal_override) {
        // The whole nonlocal factor is a constant: one application of I^{2a}
        // of that constant gives the fixed point directly, but the iteration
        // is kept so diagnostics stay uniform.
        const double K = *spec.nonlocal_override;
        const std::vector<double> ones(n, 1.0);
        const std::vector<double> shape = quad.apply(ones);
        auto sweep = [&](const GridFn&, std::vector<double>& out) {
            out.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                out[i] = spec.u0 + K * shape[i];
            }
            for (std::size_t i = 0; i < frozen_count; ++i) {
                out[i] = frozen_values[i];
            }
        };
        const double start_value = frozen_count ? frozen_values[frozen_count - 1] : spec.u0;
        std::vector<double> init(frozen_values.begin(), frozen_values.begin() + frozen_count);
        init.resize(n, start_value);
        return picard_iterate(GridFn(nodes, init), sweep, opts);
    }

    // f on the frozen prefix never changes; cache it.
    std::vector<double> fv(n);
    for (std::size_t i = 0; i < frozen_count; ++i) {
        fv[i] = checked_eval2(spec.f, nodes[i], frozen_values[i], "f");
    }

    auto sweep = [&](const GridFn& u, std::vector<double>& out) {
        const auto uv = u.values();
        for (std::size_t i = frozen_count; i < n; ++i) {
            fv[i] = checked_eval2(spec.f, nodes[i], uv[i], "f");
        }
        out.resize(n);
        out[0] = spec.u0;
        double prefix = 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            prefix += 0.5 * (fv[i - 1] + fv[i]) * (nodes[i] - nodes[i - 1]);
            const double denom = prefix * prefix;
            if (i == 1 && denom < kDenominatorFloor) {
                throw singularity_error(
                    "solve_caputo: squared prefix integral at the first node is " +
                    std::to_string(denom) + ", below the floor");
            }
            out[i] = spec.u0 + spec.lambda * quad.apply_row(i, fv) / denom;
        }
        for (std::size_t i = 0; i < frozen_count; ++i) {
            out[i] = frozen_values[i];
        }
    };

    const double start_value = frozen_count ? frozen_values[frozen_count - 1] : spec.u0;
    std::vector<double> init(frozen_values.begin(), frozen_values.begin() + frozen_count);
    init.resize(n, start_value);
    return picard_iterate(GridFn(nodes, init), sweep, opts);
}

}  // namespace

double caputo_local_radius(const CaputoSpec& spec) {
    validate(spec);
    return std::min(caputo_radius_raw(spec), spec.T);
}

double caputo_continuation_window(const CaputoSpec& spec) {
    validate(spec);
    return std::min(caputo_radius_raw(spec), 1.0);
}

SolveReport solve_caputo_local(const CaputoSpec& spec, const PicardOptions& opts,
                               bool spot_check) {
    validate(spec);
    const double horizon = caputo_local_radius(spec);
    if (!std::isfinite(horizon)) {
        throw domain_error("solve_caputo_local: infinite local radius (lambda = 0 with no cap?)");
    }
    if (spot_check) {
        spot_check_hypotheses(spec, horizon);
    }
    const std::vector<double> nodes = make_grid(horizon, spec.grid);
    return caputo_picard(nodes, 0, {}, spec, opts);
}

SolveReport solve_caputo_local(const CaputoSpec& spec, double tol, int max_iter) {
    PicardOptions opts;
    opts.tol = tol;
    opts.max_iter = max_iter;
    return solve_caputo_local(spec, opts);
}

SolveReport continue_caputo(const SolveReport& prev, const CaputoSpec& spec,
                            const PicardOptions& opts) {
    validate(spec);
    if (!prev.converged) {
        throw domain_error("continue_caputo: the previous solve did not converge");
    }
    const double beta = prev.solution.nodes().back();
    const double window = caputo_continuation_window(spec);
    if (!std::isfinite(window)) {
        throw domain_error("continue_caputo: infinite continuation window");
    }
    std::vector<double> nodes(prev.solution.nodes().begin(), prev.solution.nodes().end());
    const std::size_t frozen_count = nodes.size();
    const std::size_t m = std::max<std::size_t>(2, spec.grid.n);
    for (std::size_t j = 1; j <= m; ++j) {
        nodes.push_back(beta + window * (static_cast<double>(j) / static_cast<double>(m)));
    }
    return caputo_picard(nodes, frozen_count, prev.solution.values(), spec, opts);
}

SolveReport continue_caputo(const SolveReport& prev, const CaputoSpec& spec, double tol,
                            int max_iter) {
    PicardOptions opts;
    opts.tol = tol;
    opts.max_iter = max_iter;
    return continue_caputo(prev, spec, opts);
}

GridFn gronwall_envelope(const GridFn& w, double a, FracOrder alpha) {
    if (!(a > 0.0)) {
        throw domain_error("gronwall_envelope: feedback coefficient must be positive");
    }
    for (double v : w.values()) {
        if (v < 0.0) {
            throw domain_error("gronwall_envelope: w must be nonnegative");
        }
    }
    const std::vector<double> nodes(w.nodes().begin(), w.nodes().end());
    // The kernel (t-s)^{-alpha} is Gamma(1-alpha) times the order-(1-alpha)
    // fractional integral kernel.
    const ProductIntegrator quad(nodes, FracOrder(1.0 - alpha.alpha));
    const double scale = a * gamma_fn(1.0 - alpha.alpha);

    auto sweep = [&](const GridFn& v, std::vector<double>& out) {
        out = quad.apply(v.values());
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = w.value(i) + scale * out[i];
        }
    };
    PicardOptions opts;
    opts.tol = 1e-12 * std::max(1.0, w.sup_norm());
    opts.max_iter = 500;
    SolveReport report = picard_iterate(w, sweep, opts);
    if (!report.converged) {
        throw accuracy_error("gronwall_envelope: Neumann iteration did not converge in " +
                             std::to_string(opts.max_iter) + " sweeps");
    }
    return report.solution;
}

bool check_global_growth(const CaputoSpec& spec, double c3, double c4, double c5) {
    validate(spec);
    if (!(c3 > 0.0) || !(c4 > 0.0) || !(c5 > 0.0)) {
        throw domain_error("check_global_growth: constants must be positive");
    }
    constexpr int kS = 32;
    constexpr int kU = 64;
    const double R = std::abs(spec.u0) + spec.ball_radius;
    for (int i = 0; i <= kS; ++i) {
        const double s = spec.T * static_cast<double>(i) / kS;
        for (int j = 0; j <= kU; ++j) {
            const double u = -R + 2.0 * R * static_cast<double>(j) / kU;
            double v;
            try {
                v = spec.f(s, u);
            } catch (const error&) {
                return false;
            }
            if (!std::isfinite(v)) {
                return false;
            }
            const double mag = std::abs(v);
            if (mag < c3 * (1.0 - 1e-12) || mag > (c4 * std::abs(u) + c5) * (1.0 + 1e-12)) {
                return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Time-scale problem
// ---------------------------------------------------------------------------

void validate(const TSSpec& spec) {
    if (!(spec.alpha > 0.0) || !(spec.alpha < 0.5)) {
        throw domain_error("TSSpec: alpha must lie in (0, 1/2)");
    }
    if (!(spec.lambda >= 0.0)) {
        throw domain_error("TSSpec: lambda must be nonnegative");
    }
    if (spec.scale.min() != 0.0) {
        throw domain_error("TSSpec: the scale must start at 0");
    }
    if (spec.T != spec.scale.max()) {
        throw domain_error("TSSpec: horizon must be the maximum of the scale");
    }
    if (!(spec.c1 > 0.0) || !(spec.c1 <= spec.c2)) {
        throw domain_error("TSSpec: need 0 < c1 <= c2");
    }
    if (!(spec.Lf >= 0.0)) {
        throw domain_error("TSSpec: Lipschitz constant must be nonnegative");
    }
    if (!spec.f) {
        throw validation_error("TSSpec: f is not set");
    }
}

void spot_check_hypotheses(const TSSpec& spec) {
    validate(spec);
    const double hi = std::max(1.0, 2.0 * bound_ts(spec));
    check_h1_samples(spec.f, 0.0, hi, spec.c1, spec.c2, spec.Lf);
}

double uniqueness_threshold_ts(const TSSpec& spec) {
    validate(spec);
    if (spec.Lf == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    const double two_alpha = 2.0 * spec.alpha;
    const double g = gamma_fn(two_alpha + 1.0);
    const double c1T = spec.c1 * spec.T;
    const double first = std::pow(spec.T, two_alpha) * spec.Lf / (c1T * c1T * g);
    const double second = 2.0 * spec.c2 * spec.c2 * std::pow(spec.T, 2.0 * (spec.alpha + 1.0)) *
                          spec.Lf / (c1T * c1T * c1T * c1T * g);
    return 1.0 / (first + second);
}

double bound_ts(const TSSpec& spec) {
    validate(spec);
    const double two_alpha = 2.0 * spec.alpha;
    const double c1T = spec.c1 * spec.T;
    return spec.lambda * spec.c2 * std::pow(spec.T, two_alpha) /
           (gamma_fn(two_alpha + 1.0) * c1T * c1T);
}

namespace {

/// Precomputed row weights of the order-2a fractional delta integral on a
/// fixed time-scale grid: scattered nodes contribute point masses, continuous
/// panels the exact kernel moments.  The 1/Gamma factor is applied by the
/// caller, matching ts_frac_integral.
class TsKernelWeights {
public:
    TsKernelWeights(const TsGridFn& shape, double alpha)
        : shape_(shape), alpha_(alpha), n_(shape.size()) {
        if (n_ > ProductIntegrator::kTabulationLimit + 1) {
            return;  // recompute rows on the fly instead of holding the table
        }
        tabulated_ = true;
        wl_.resize(n_ * (n_ - 1) / 2);
        wr_.resize(wl_.size());
        for (std::size_t i = 1; i < n_; ++i) {
            const std::size_t base = row_base(i);
            for (std::size_t k = 0; k < i; ++k) {
                pair_weights(i, k, wl_[base + k], wr_[base + k]);
            }
        }
    }

    double row(std::size_t i, std::span<const double> values) const {
        double acc = 0.0;
        if (tabulated_) {
            const std::size_t base = row_base(i);
            for (std::size_t k = 0; k < i; ++k) {
                acc += wl_[base + k] * values[k] + wr_[base + k] * values[k + 1];
            }
            return acc;
        }
        for (std::size_t k = 0; k < i; ++k) {
            double wl, wr;
            pair_weights(i, k, wl, wr);
            acc += wl * values[k] + wr * values[k + 1];
        }
        return acc;
    }

private:
    void pair_weights(std::size_t i, std::size_t k, double& wl, double& wr) const {
        const auto nodes = shape_.nodes();
        const double t = nodes[i];
        if (shape_.gap_after(k)) {
            const double mu = nodes[k + 1] - nodes[k];
            wl = std::pow(t - nodes[k], alpha_ - 1.0) * mu;
            wr = 0.0;
            return;
        }
        const double b = t - nodes[k];
        const double a = t - nodes[k + 1];
        const double pb = std::pow(b, alpha_);
        const double pa = (a == 0.0) ? 0.0 : std::pow(a, alpha_);
        const double m0 = (pb - pa) / alpha_;
        const double m1 = b * m0 - (pb * b - pa * a) / (alpha_ + 1.0);
        const double right = m1 / (nodes[k + 1] - nodes[k]);
        wl = m0 - right;
        wr = right;
    }

    static std::size_t row_base(std::size_t i) { return i * (i - 1) / 2; }

    const TsGridFn& shape_;
    double alpha_;
    std::size_t n_;
    bool tabulated_ = false;
    std::vector<double> wl_, wr_;
};

}  // namespace

ThermistorResult solve_ts(const TSSpec& spec, const PicardOptions& opts, bool spot_check) {
    validate(spec);
    if (spot_check) {
        spot_check_hypotheses(spec);
    }
    const TsGridFn shape = TsGridFn::sample(spec.scale, spec.grid, [](double) { return 0.0; });
    const auto nodes_span = shape.nodes();
    const std::vector<double> nodes(nodes_span.begin(), nodes_span.end());
    const std::size_t n = nodes.size();
    const double two_alpha = 2.0 * spec.alpha;
    const TsKernelWeights weights(shape, two_alpha);
    const double inv_gamma = 1.0 / gamma_fn(two_alpha);

    bool range_violated = false;
    std::vector<double> fv(n);
    auto sweep = [&](const GridFn& u, std::vector<double>& out) {
        const auto uv = u.values();
        for (std::size_t i = 0; i < n; ++i) {
            fv[i] = checked_eval(spec.f, uv[i], "f");
            if (fv[i] < spec.c1 * (1.0 - kRangeSlack) || fv[i] > spec.c2 * (1.0 + kRangeSlack)) {
                range_violated = true;
            }
        }
        // Delta integral of f over [0, T]: trapezoid on continuous panels,
        // point masses across gaps.
        double denom_root = 0.0;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            const double width = nodes[k + 1] - nodes[k];
            denom_root += shape.gap_after(k) ? fv[k] * width
                                             : 0.5 * (fv[k] + fv[k + 1]) * width;
        }
        const double denom = denom_root * denom_root;
        if (denom < kDenominatorFloor) {
            throw singularity_error("solve_ts: nonlocal denominator collapsed");
        }
        out.resize(n);
        out[0] = 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            out[i] = spec.lambda * weights.row(i, fv) * inv_gamma / denom;
        }
    };

    SolveReport report = picard_iterate(GridFn::constant(nodes, 0.0), sweep, opts);
    if (range_violated) {
        report.warnings.push_back("iterates left the asserted range [c1, c2] of f");
    }

    BoundReport bounds;
    bounds.threshold = uniqueness_threshold_ts(spec);
    bounds.bound = bound_ts(spec);
    bounds.realized_norm = report.solution.sup_norm();
    bounds.satisfied = bounds.realized_norm <= bounds.bound * (1.0 + 1e-6);
    return ThermistorResult{std::move(report), bounds};
}

ThermistorResult solve_ts(const TSSpec& spec, double tol, int max_iter) {
    PicardOptions opts;
    opts.tol = tol;
    opts.max_iter = max_iter;
    return solve_ts(spec, opts);
}

}  // namespace fracsolve
