#include "fracsolve/oracle.hpp"

#include <cmath>
#include <string>

#include "fracsolve/errors.hpp"

namespace fracsolve::oracle {

OracleResult power_law_rl_integral(double mu, FracOrder order, double t) {
    if (!(mu >= 0.0)) {
        throw domain_error("power_law_rl_integral: exponent must be nonnegative");
    }
    if (!(t >= 0.0)) {
        throw domain_error("power_law_rl_integral: t must be nonnegative");
    }
    const double value = std::tgamma(mu + 1.0) / std::tgamma(mu + order.alpha + 1.0) *
                         std::pow(t, mu + order.alpha);
    return OracleResult{value, 0.0, Method::power_law};
}

OracleResult mittag_leffler(double alpha, double z, int terms) {
    if (terms < 10) {
        throw domain_error("mittag_leffler: need at least 10 terms");
    }
    if (!(alpha > 0.0)) {
        throw domain_error("mittag_leffler: alpha must be positive");
    }
    auto term = [&](int k) {
        if (z == 0.0) {
            return k == 0 ? 1.0 : 0.0;
        }
        const double magnitude =
            std::exp(static_cast<double>(k) * std::log(std::abs(z)) -
                     std::lgamma(alpha * static_cast<double>(k) + 1.0));
        return (z < 0.0 && (k % 2 != 0)) ? -magnitude : magnitude;
    };
    double sum = 0.0;
    for (int k = 0; k < terms; ++k) {
        sum += term(k);
    }
    const double omitted = std::abs(term(terms));
    const double last = std::abs(term(terms - 1));
    if (omitted >= last && omitted > 0.0) {
        throw accuracy_error("mittag_leffler: term magnitudes are not decreasing at the cutoff");
    }
    return OracleResult{sum, omitted, Method::ml_series};
}

OracleResult brute_quadrature(const std::function<double(double)>& integrand, double a, double b,
                              std::size_t panels) {
    if (panels < 10000) {
        throw domain_error("brute_quadrature: need at least 10^4 panels");
    }
    if (!(a < b)) {
        throw domain_error("brute_quadrature: need a < b");
    }
    auto midpoint_sum = [&](std::size_t m) {
        const double h = (b - a) / static_cast<double>(m);
        double acc = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            acc += integrand(a + (static_cast<double>(i) + 0.5) * h);
        }
        return acc * h;
    };
    const double fine = midpoint_sum(panels);
    const double coarse = midpoint_sum(panels / 2);
    return OracleResult{fine, std::abs(fine - coarse), Method::brute_quadrature};
}

OracleResult discrete_ts_sum(const TimeScale& scale, std::span<const double> values,
                             FracOrder order, double t) {
    const auto segments = scale.segments();
    if (values.size() != segments.size()) {
        throw validation_error("discrete_ts_sum: need one value per point of the scale");
    }
    if (!scale.contains(t)) {
        throw domain_error("discrete_ts_sum: t must belong to the scale");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (segments[i].left >= t) {
            break;
        }
        if (segments[i].left != segments[i].right) {
            throw domain_error(
                "discrete_ts_sum: the scale has a nondegenerate interval below t");
        }
        const double p = segments[i].left;
        const double mu = (i + 1 < segments.size() ? segments[i + 1].left : p) - p;
        sum += std::pow(t - p, order.alpha - 1.0) * (values[i] * mu);
    }
    return OracleResult{sum / std::tgamma(order.alpha), 0.0, Method::discrete_sum};
}

}  // namespace fracsolve::oracle
