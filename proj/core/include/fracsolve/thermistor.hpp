#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fracsolve/grid.hpp"
#include "fracsolve/time_scale.hpp"
#include "fracsolve/volterra.hpp"

namespace fracsolve {

/// Nonlocal Riemann-Liouville thermistor problem on [0, T]:
///   D^{2a} u(t) = lambda f(u(t)) / (int_0^T f(u) dx)^2 + h(t),
/// with vanishing fractional initial data, under hypothesis (H1)
/// c1 <= f <= c2 with Lipschitz constant Lf, and bounded h.  The hypothesis
/// constants are user-asserted and only spot-checked by sampling.
struct RLSpec {
    double alpha;             // order parameter, 0 < alpha < 1/2
    double lambda;            // nonlocal coupling, >= 0
    double T;                 // horizon, > 0
    double weight_N = 1.0;    // N of the norm sup e^{-Nt} |.|
    std::function<double(double)> f;   // f(u)
    std::function<double(double)> h;   // h(t); empty means h = 0
    double c1 = 1.0;
    double c2 = 1.0;
    double Lf = 0.0;
    GridPolicy grid;
};

/// Closed-form certificate attached to a solve: the uniqueness threshold for
/// lambda, the a priori bound on the weighted norm, and whether the computed
/// solution actually satisfies it.
struct BoundReport {
    double threshold = 0.0;
    double bound = 0.0;
    double realized_norm = 0.0;
    bool satisfied = false;
};

struct ThermistorResult {
    SolveReport report;
    BoundReport bounds;
};

struct RLSolveOptions {
    PicardOptions picard;
    double initial_value = 0.0;
    bool spot_check = true;
};

void validate(const RLSpec& spec);

/// Samples f over the expected solution range and checks the asserted (H1)
/// constants: values inside [c1, c2] and difference quotients below Lf.
/// Throws hypothesis_error on a violation.
void spot_check_hypotheses(const RLSpec& spec);

/// Largest admissible lambda for contraction-based uniqueness,
///   N^{2a} / (Lf (1/(c1 T)^2 + 2 c2^2 T e^{NT} / (c1 T)^4)).
/// Returns +infinity when Lf = 0 (no Lipschitz constraint).
double uniqueness_threshold_rl(const RLSpec& spec);

/// A priori bound on the weighted norm of the solution,
///   ((lambda/(c1 T)^2) f(0) + sup|h|) / N^{2a} * exp(lambda Lf / (c1 T N^a)^2).
double bound_rl(const RLSpec& spec);

/// Picard iteration of u <- I^{2a}[ lambda f(u)/(int_0^T f(u))^2 + h ],
/// stopping in the weighted norm e^{-Nt}.  The scalar denominator is
/// recomputed every sweep by composite trapezoid on the solution grid.
ThermistorResult solve_rl(const RLSpec& spec, double tol, int max_iter);
ThermistorResult solve_rl(const RLSpec& spec, const RLSolveOptions& options);

struct WeightScanEntry {
    double N;
    double threshold;
};
struct WeightScan {
    double best_N = 1.0;
    double best_threshold = 0.0;
    std::vector<WeightScanEntry> table;
};

/// Evaluates the uniqueness threshold over candidate norm weights and reports
/// the maximizer.  Defaults to N in {0.5, 1, 2, 4, 8}.
WeightScan scan_weight_rl(const RLSpec& spec, std::span<const double> candidates = {});

/// Nonlocal Caputo thermistor problem on the half axis,
///   ^C D^{2a} u(t) = lambda f(t, u(t)) / (int_0^t f(x, u) dx)^2,  u(0) = u0,
/// solved locally on [0, h] and extended by continuation.  The constants of
/// (H1)-(H3) are user-asserted; (H1) and the growth condition f <= M s^2 are
/// mutually exclusive near s = 0 and are never enforced together.
struct CaputoSpec {
    double alpha;     // 0 < alpha < 1/2
    double lambda;    // >= 0
    double u0 = 0.0;
    std::function<double(double, double)> f;  // f(s, u)
    double c1 = 1.0;
    double c2 = 1.0;
    double Lf = 0.0;
    double M = 1.0;       // growth constant of f(s,u) <= M s^2
    double omega = 2.0;   // exponent of the (H3) modulus
    double ball_radius = 1.0;  // b of the invariant ball around u0
    double T = 1.0;            // target horizon
    GridPolicy grid;
    /// Test hook: when set, the whole nonlocal factor lambda f / D^2 is
    /// replaced by this constant.
    std::optional<double> nonlocal_override;
};

void validate(const CaputoSpec& spec);
void spot_check_hypotheses(const CaputoSpec& spec, double horizon);

/// Radius of the local existence interval,
///   h = min{ (b Gamma(2a+1) c1^2 / (lambda M))^{1/(2a)}, T }.
double caputo_local_radius(const CaputoSpec& spec);

/// Window of one continuation step: the same expression capped at 1.
double caputo_continuation_window(const CaputoSpec& spec);

/// Picard iteration of the local operator on [0, caputo_local_radius]:
/// per sweep the prefix integrals int_0^{t_j} f(x, u(x)) dx are accumulated
/// by running trapezoid sums and the node-j update divides by the squared
/// prefix at t_j.  Node 0 carries u0; a squared prefix below 1e-30 at the
/// first node raises singularity_error.
SolveReport solve_caputo_local(const CaputoSpec& spec, double tol, int max_iter);
SolveReport solve_caputo_local(const CaputoSpec& spec, const PicardOptions& opts,
                               bool spot_check = true);

/// Extends a converged solution on [0, beta] to [0, beta + window]: values on
/// [0, beta] stay frozen (the history term uses them), only the new window is
/// iterated.  Returns the concatenated solution as one report.
SolveReport continue_caputo(const SolveReport& prev, const CaputoSpec& spec, double tol,
                            int max_iter);
SolveReport continue_caputo(const SolveReport& prev, const CaputoSpec& spec,
                            const PicardOptions& opts);

/// Sharp numerical envelope of the weakly singular Gronwall inequality: the
/// limit of v <- w + a int_0^t v(s) (t-s)^{-alpha} ds (Neumann series).  Any v
/// satisfying the inequality hypothesis on the same grid is dominated by it.
GridFn gronwall_envelope(const GridFn& w, double a, FracOrder alpha);

/// Samples f over [0, T] x [-R, R] (R = |u0| + ball radius) and reports
/// whether c3 <= |f(s,x)| <= c4 |x| + c5 holds at every sample.
bool check_global_growth(const CaputoSpec& spec, double c3, double c4, double c5);

/// Nonlocal thermistor problem on an arbitrary time scale with t0 = 0:
///   ^T D^{2a} u(t) = lambda f(u(t)) / (int_0^T f(u) dx)^2  on (0, T),
/// T the maximum of the scale.
struct TSSpec {
    TimeScale scale;
    double alpha;    // 0 < alpha < 1/2
    double lambda;   // >= 0
    double T;        // must equal scale.max()
    std::function<double(double)> f;  // f(u)
    double c1 = 1.0;
    double c2 = 1.0;
    double Lf = 0.0;
    GridPolicy grid;
};

void validate(const TSSpec& spec);
void spot_check_hypotheses(const TSSpec& spec);

/// Admissible lambda for uniqueness on the time scale,
///   ( T^{2a} Lf / ((c1 T)^2 Gamma(2a+1)) +
///     2 c2^2 T^{2(a+1)} Lf / ((c1 T)^4 Gamma(2a+1)) )^{-1};
/// +infinity when Lf = 0.
double uniqueness_threshold_ts(const TSSpec& spec);

/// Plain-sup a priori bound lambda c2 T^{2a} / (Gamma(2a+1) (c1 T)^2) carried
/// by the TS bound report (the fixed-point operator maps into this ball).
double bound_ts(const TSSpec& spec);

/// Picard iteration of the delta-integral operator; the scalar denominator
/// (int_0^T f(u) dx)^2 is recomputed per sweep.  Stops in the plain sup norm.
ThermistorResult solve_ts(const TSSpec& spec, double tol, int max_iter);
ThermistorResult solve_ts(const TSSpec& spec, const PicardOptions& opts, bool spot_check = true);

}  // namespace fracsolve
