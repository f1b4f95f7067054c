#include "fracsolve/gamma.hpp"

#include <array>
#include <cmath>
#include <string>

#include "fracsolve/errors.hpp"

namespace fracsolve {

namespace {

// Godfrey's coefficients for g = 7.
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

constexpr double kSqrtTwoPi = 2.506628274631000502415765284811;

double lanczos_core(double x) {
    // Valid for x >= 0.5.
    double acc = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) {
        acc += kLanczos[i] / (x - 1.0 + static_cast<double>(i));
    }
    const double t = x + 6.5;
    return kSqrtTwoPi * std::pow(t, x - 0.5) * std::exp(-t) * acc;
}

}  // namespace

double gamma_fn(double x) {
    if (!(x > 0.0)) {
        throw domain_error("gamma_fn: argument must be positive, got " + std::to_string(x));
    }
    if (x < 0.5) {
        // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x)).
        return M_PI / (std::sin(M_PI * x) * lanczos_core(1.0 - x));
    }
    return lanczos_core(x);
}

}  // namespace fracsolve
