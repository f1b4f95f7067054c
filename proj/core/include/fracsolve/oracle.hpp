#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "fracsolve/grid.hpp"
#include "fracsolve/time_scale.hpp"

// Independent reference implementations, used only by tests and the CLI
// `verify` subcommand.  To stay independent of the library code paths they
// check, everything here evaluates gamma through the standard library and
// never calls the product-integration machinery.
namespace fracsolve::oracle {

enum class Method {
    power_law,
    ml_series,
    brute_quadrature,
    discrete_sum,
};

struct OracleResult {
    double value = 0.0;
    double est_error = 0.0;
    Method method = Method::power_law;
};

/// Closed-form fractional integral of a power:
///   I^alpha t^mu = Gamma(mu+1)/Gamma(mu+alpha+1) t^{mu+alpha}.
OracleResult power_law_rl_integral(double mu, FracOrder order, double t);

/// Truncated Mittag-Leffler series sum_{k<terms} z^k / Gamma(alpha k + 1);
/// the error estimate is the first omitted term.  Throws accuracy_error when
/// the term magnitudes are not decreasing at the cutoff.
OracleResult mittag_leffler(double alpha, double z, int terms);

/// Composite-midpoint quadrature over [a, b] (midpoints never touch singular
/// endpoints); the error estimate comes from a Richardson comparison against
/// half the panel count.  Requires at least 10^4 panels.
OracleResult brute_quadrature(const std::function<double(double)>& integrand, double a, double b,
                              std::size_t panels);

/// Exact weighted sum sum_{p < t} (t - p)^{alpha-1} g(p) mu(p) / Gamma(alpha)
/// over a purely discrete scale; values align with the scale's points.
/// Throws domain_error when a nondegenerate interval lies below t.
OracleResult discrete_ts_sum(const TimeScale& scale, std::span<const double> values,
                             FracOrder order, double t);

}  // namespace fracsolve::oracle
