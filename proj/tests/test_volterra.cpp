#include <cmath>
#include <vector>

#include <doctest.h>

#include "fracsolve/errors.hpp"
#include "fracsolve/gamma.hpp"
#include "fracsolve/oracle.hpp"
#include "fracsolve/volterra.hpp"

using namespace fracsolve;

TEST_CASE("picard with a constant integrand hits the power-law fixed point") {
    // F = K: the fixed point is u0 + K t^{2a} / Gamma(2a + 1).
    VolterraProblem p{FracOrder(0.5), 0.0, 1.0, [](double, double) { return 1.0; },
                      GridPolicy{512, 1.0}};
    const SolveReport rep = picard_solve(p, 1e-10, 50);
    CHECK(rep.converged);
    CHECK(rep.iterations <= 3);
    CHECK(rep.solution.value(rep.solution.size() - 1) ==
          doctest::Approx(1.1283791670955126).epsilon(1e-12));
    CHECK(rep.residual <= 1e-10);
    for (double d : rep.diff_norms) {
        CHECK(d >= 0.0);
    }
}

TEST_CASE("picard with zero integrand returns the initial value immediately") {
    VolterraProblem p{FracOrder(0.4), 3.5, 2.0, [](double, double) { return 0.0; },
                      GridPolicy{64, 1.0}};
    const SolveReport rep = picard_solve(p, 1e-12, 10);
    CHECK(rep.converged);
    CHECK(rep.iterations == 1);
    for (std::size_t j = 0; j < rep.solution.size(); ++j) {
        CHECK(rep.solution.value(j) == 3.5);
    }
}

TEST_CASE("linear problem converges to the Mittag-Leffler function") {
    // u' of order 1/2 feeding back u: u(t) = E_{1/2}(sqrt t).
    const double frozen = 1.9523604891825571;  // E_{1/2}(1/2), 60-term series
    const auto oracle_val = oracle::mittag_leffler(0.5, 0.5, 60);
    CHECK(oracle_val.value == doctest::Approx(frozen).epsilon(1e-14));

    VolterraProblem p{FracOrder(0.5), 1.0, 1.0, [](double, double u) { return u; },
                      GridPolicy{1024, 2.0}};
    const SolveReport rep = picard_solve(p, 1e-10, 100);
    CHECK(rep.converged);
    CHECK(rep.contraction_factor < 1.0);
    CHECK(rep.solution(0.25) == doctest::Approx(frozen).epsilon(2e-6));
}

TEST_CASE("grid refinement reduces the error by at least 1.5x") {
    const double exact = oracle::mittag_leffler(0.5, 0.5, 60).value;
    auto solve_err = [&](std::size_t n) {
        VolterraProblem p{FracOrder(0.5), 1.0, 1.0, [](double, double u) { return u; },
                          GridPolicy{n, 2.0}};
        return std::abs(picard_solve(p, 1e-12, 100).solution(0.25) - exact);
    };
    const double coarse = solve_err(512);
    const double fine = solve_err(1024);
    CHECK(coarse / fine >= 1.5);
}

TEST_CASE("contraction regime: factor < 1 and the iteration count is consistent") {
    VolterraProblem p{FracOrder(0.5), 1.0, 1.0, [](double, double u) { return 0.5 * u; },
                      GridPolicy{256, 2.0}};
    const double tol = 1e-10;
    const SolveReport rep = picard_solve(p, tol, 200);
    CHECK(rep.converged);
    REQUIRE(rep.diff_norms.size() >= 2);
    CHECK(rep.contraction_factor < 1.0);
    const double predicted =
        std::ceil(std::log(tol / rep.diff_norms.front()) / std::log(rep.contraction_factor)) + 2.0;
    CHECK(static_cast<double>(rep.iterations) <= predicted + 1.0);
    // One more application of the operator moves a converged solution by at
    // most 2 tol.
    CHECK(rep.residual <= 2.0 * tol);
}

TEST_CASE("weighted stopping norm reaches the same fixed point") {
    VolterraProblem p{FracOrder(0.5), 1.0, 1.0, [](double, double u) { return u; },
                      GridPolicy{512, 2.0}};
    PicardOptions weighted;
    weighted.tol = 1e-10;
    weighted.max_iter = 200;
    weighted.weight = 4.0;
    const SolveReport a = picard_solve(p, weighted);
    const SolveReport b = picard_solve(p, 1e-10, 200);
    CHECK(a.converged);
    // The weighted tolerance is looser at late times; the plain-sup gap stays
    // within tol * e^{N T}.
    CHECK(sup_distance(a.solution, b.solution) <= 1e-10 * std::exp(4.0) + 1e-12);
    CHECK(a.contraction_factor < 1.0);
}

TEST_CASE("runaway feedback triggers divergence detection") {
    VolterraProblem p{FracOrder(0.5), 1.0, 1.0, [](double, double u) { return 50.0 * u; },
                      GridPolicy{128, 1.0}};
    try {
        picard_solve(p, 1e-10, 200);
        FAIL("expected divergence_error");
    } catch (const divergence_error& e) {
        CHECK(e.trace().size() >= 6);
        const auto& tr = e.trace();
        for (std::size_t i = tr.size() - 5; i < tr.size(); ++i) {
            CHECK(tr[i] > tr[i - 1]);
        }
    }
}

TEST_CASE("NaN from the integrand is an evaluation error") {
    VolterraProblem p{FracOrder(0.5), 1.0, 1.0,
                      [](double s, double) { return s > 0.5 ? std::nan("") : 1.0; },
                      GridPolicy{64, 1.0}};
    CHECK_THROWS_AS(picard_solve(p, 1e-10, 10), evaluation_error);
}

TEST_CASE("picard option validation") {
    VolterraProblem p{FracOrder(0.5), 0.0, 1.0, [](double, double) { return 1.0; },
                      GridPolicy{16, 1.0}};
    CHECK_THROWS_AS(picard_solve(p, 0.0, 10), domain_error);
    CHECK_THROWS_AS(picard_solve(p, 1e-8, 0), domain_error);
    p.integrand = nullptr;
    CHECK_THROWS_AS(picard_solve(p, 1e-8, 10), validation_error);
}

TEST_CASE("abel second kind with vanishing kernel returns f") {
    const auto nodes = make_grid(1.0, {128, 1.0});
    const GridFn f = GridFn::sample(nodes, [](double x) { return 1.0 + x * x; });
    const SolveReport rep =
        abel_second_kind(f, [](double, double) { return 0.0; }, FracOrder(0.5), 1e-12, 10);
    CHECK(rep.converged);
    CHECK(rep.iterations == 1);
    for (std::size_t j = 0; j < f.size(); ++j) {
        CHECK(rep.solution.value(j) == f.value(j));
    }
}

TEST_CASE("abel second kind recovers a manufactured solution (convolution kernel)") {
    // g(s) = s with k = 1/Gamma(1-a): f = g + I^{1-a} g via the Beta identity.
    const double alpha = 0.5;
    const auto nodes = make_grid(1.0, {2048, 2.0});
    const GridFn f = GridFn::sample(nodes, [&](double x) {
        return x + oracle::power_law_rl_integral(1.0, FracOrder(1.0 - alpha), x).value;
    });
    const SolveReport rep = abel_second_kind(
        f, [&](double, double) { return 1.0 / std::tgamma(1.0 - alpha); }, FracOrder(alpha),
        1e-10, 100);
    CHECK(rep.converged);
    double err = 0.0;
    for (std::size_t j = 0; j < rep.solution.size(); ++j) {
        err = std::max(err, std::abs(rep.solution.value(j) - rep.solution.node(j)));
    }
    CHECK(err < 1e-3);
}

TEST_CASE("abel second kind recovers g = 1 under the kernel x*s") {
    // Forward data from the Beta identity: int_0^x s (x-s)^{-1/2} ds = (4/3) x^{3/2}.
    const auto nodes = make_grid(1.0, {2048, 2.0});
    const GridFn f =
        GridFn::sample(nodes, [](double x) { return 1.0 + 4.0 / 3.0 * std::pow(x, 2.5); });
    const SolveReport rep =
        abel_second_kind(f, [](double x, double s) { return x * s; }, FracOrder(0.5), 1e-10, 100);
    CHECK(rep.converged);
    double err = 0.0;
    for (std::size_t j = 0; j < rep.solution.size(); ++j) {
        err = std::max(err, std::abs(rep.solution.value(j) - 1.0));
    }
    CHECK(err < 1e-3);
}

TEST_CASE("abel first kind inverts the convolution forward map") {
    SUBCASE("constant solution") {
        const double alpha = 0.5;
        const auto nodes = make_grid(1.0, {2048, 2.0});
        const GridFn f = GridFn::sample(nodes, [&](double x) {
            return std::pow(x, 1.0 - alpha) / std::tgamma(2.0 - alpha);
        });
        const GridFn g = abel_first_kind_convolution(f, FracOrder(alpha));
        double err = 0.0;
        for (std::size_t j = 4; j + 1 < g.size(); ++j) {
            err = std::max(err, std::abs(g.value(j) - 1.0));
        }
        CHECK(err < 1e-3);
    }
    SUBCASE("zero data") {
        const auto nodes = make_grid(1.0, {64, 1.0});
        const GridFn g = abel_first_kind_convolution(GridFn::constant(nodes, 0.0), FracOrder(0.5));
        for (std::size_t j = 0; j < g.size(); ++j) {
            CHECK(g.value(j) == 0.0);
        }
    }
    SUBCASE("linear solution round trip") {
        const double alpha = 0.5;
        const auto nodes = make_grid(1.0, {2048, 2.0});
        const GridFn f = GridFn::sample(nodes, [&](double x) {
            return oracle::power_law_rl_integral(1.0, FracOrder(1.0 - alpha), x).value;
        });
        const GridFn g = abel_first_kind_convolution(f, FracOrder(alpha));
        double err = 0.0;
        for (std::size_t j = 4; j + 1 < g.size(); ++j) {
            err = std::max(err, std::abs(g.value(j) - g.node(j)));
        }
        CHECK(err < 1e-3);
    }
    SUBCASE("inconsistent data") {
        const auto nodes = make_grid(1.0, {64, 1.0});
        CHECK_THROWS_AS(abel_first_kind_convolution(GridFn::constant(nodes, 1.0), FracOrder(0.5)),
                        consistency_error);
    }
}
