#include <cmath>
#include <limits>
#include <vector>

#include <doctest.h>

#include "fracsolve/errors.hpp"
#include "fracsolve/gamma.hpp"
#include "fracsolve/oracle.hpp"
#include "fracsolve/thermistor.hpp"

using namespace fracsolve;

namespace {

RLSpec constant_rl() {
    RLSpec spec;
    spec.alpha = 0.25;
    spec.lambda = 0.1;
    spec.T = 1.0;
    spec.weight_N = 1.0;
    spec.f = [](double) { return 1.0; };
    spec.c1 = spec.c2 = 1.0;
    spec.Lf = 0.0;
    spec.grid = GridPolicy{1024, 2.0};
    return spec;
}

RLSpec sigmoid_rl() {
    RLSpec spec;
    spec.alpha = 0.25;
    spec.T = 1.0;
    spec.weight_N = 1.0;
    spec.f = [](double u) { return 1.0 + 1.0 / (1.0 + u * u); };
    spec.c1 = 1.0;
    spec.c2 = 2.0;
    spec.Lf = 0.6495;  // max |f'| = 3 sqrt(3) / 8
    spec.grid = GridPolicy{1024, 2.0};
    spec.lambda = 0.0;
    return spec;
}

CaputoSpec unit_caputo() {
    CaputoSpec spec;
    spec.alpha = 0.25;
    spec.lambda = 1.0;
    spec.u0 = 1.0;
    spec.f = [](double, double) { return 1.0; };
    spec.c1 = spec.c2 = 1.0;
    spec.Lf = 0.0;
    spec.M = 1.0;
    spec.ball_radius = 1.0;
    spec.T = 10.0;
    spec.grid = GridPolicy{512, 1.0};
    return spec;
}

}  // namespace

TEST_CASE("uniqueness threshold for the RL problem") {
    RLSpec spec = constant_rl();
    spec.Lf = 1.0;
    // alpha = 1/4, T = N = c1 = c2 = Lf = 1 collapses the formula to 1/(1 + 2e).
    const double want = 1.0 / (1.0 + 2.0 * std::exp(1.0));
    CHECK(uniqueness_threshold_rl(spec) == doctest::Approx(want).epsilon(1e-12));

    SUBCASE("no Lipschitz constraint means no threshold") {
        spec.Lf = 0.0;
        CHECK(std::isinf(uniqueness_threshold_rl(spec)));
    }
    SUBCASE("rescaling N moves the threshold per the formula") {
        spec.weight_N = 2.0;
        const double n2 = std::pow(2.0, 0.5) / (1.0 + 2.0 * std::exp(2.0));
        CHECK(uniqueness_threshold_rl(spec) == doctest::Approx(n2).epsilon(1e-12));
    }
    SUBCASE("strictly decreasing in Lf and c2") {
        for (double lf : {0.5, 1.0, 2.0}) {
            for (double c2 : {1.0, 1.5, 2.0}) {
                RLSpec a = spec;
                a.Lf = lf;
                a.c2 = c2;
                RLSpec b = a;
                b.Lf = lf * 1.5;
                RLSpec c = a;
                c.c2 = c2 + 0.5;
                CHECK(uniqueness_threshold_rl(b) < uniqueness_threshold_rl(a));
                CHECK(uniqueness_threshold_rl(c) < uniqueness_threshold_rl(a));
            }
        }
    }
}

TEST_CASE("a priori bound for the RL problem") {
    RLSpec spec = constant_rl();
    // Exponential factor is e^0 = 1, so the bound is just lambda f(0).
    CHECK(bound_rl(spec) == doctest::Approx(0.1).epsilon(1e-12));
    SUBCASE("vanishes with lambda") {
        spec.lambda = 0.0;
        CHECK(bound_rl(spec) == 0.0);
    }
    SUBCASE("the computed solution satisfies it") {
        const ThermistorResult res = solve_rl(spec, 1e-10, 50);
        CHECK(res.bounds.satisfied);
        CHECK(res.bounds.realized_norm <= res.bounds.bound * (1.0 + 1e-6));
    }
}

TEST_CASE("solve_rl constant conductivity has the closed-form solution") {
    const ThermistorResult res = solve_rl(constant_rl(), 1e-10, 50);
    CHECK(res.report.converged);
    CHECK(res.report.iterations <= 3);
    double err = 0.0;
    for (std::size_t j = 0; j < res.report.solution.size(); ++j) {
        const double t = res.report.solution.node(j);
        err = std::max(err, std::abs(res.report.solution.value(j) -
                                     0.1 * std::sqrt(t) / gamma_fn(1.5)));
    }
    CHECK(err < 1e-10);
    CHECK(res.report.solution.value(res.report.solution.size() - 1) ==
          doctest::Approx(0.11283791670955126).epsilon(1e-10));
}

TEST_CASE("solve_rl superposes a constant source term") {
    RLSpec spec = constant_rl();
    spec.h = [](double) { return 0.5; };
    const ThermistorResult res = solve_rl(spec, 1e-10, 50);
    double err = 0.0;
    for (std::size_t j = 0; j < res.report.solution.size(); ++j) {
        const double t = res.report.solution.node(j);
        err = std::max(err, std::abs(res.report.solution.value(j) -
                                     0.6 * std::sqrt(t) / gamma_fn(1.5)));
    }
    CHECK(err < 1e-10);
}

TEST_CASE("below the threshold two starting iterates agree (uniqueness)") {
    RLSpec spec = sigmoid_rl();
    spec.lambda = 0.9 * uniqueness_threshold_rl(spec);
    RLSolveOptions from_zero;
    from_zero.picard.tol = 1e-10;
    from_zero.picard.max_iter = 300;
    RLSolveOptions from_five = from_zero;
    from_five.initial_value = 5.0;
    const ThermistorResult a = solve_rl(spec, from_zero);
    const ThermistorResult b = solve_rl(spec, from_five);
    CHECK(a.report.converged);
    CHECK(b.report.converged);
    CHECK(a.report.contraction_factor < 1.0);
    CHECK(sup_distance(a.report.solution, b.report.solution) <= 10.0 * 1e-10);
    CHECK(a.bounds.satisfied);
    CHECK(b.bounds.satisfied);
}

TEST_CASE("hypothesis spot checks") {
    SUBCASE("f below c1 is rejected") {
        RLSpec spec = constant_rl();
        spec.f = [](double u) { return u; };  // f(0) = 0 < c1
        spec.Lf = 1.0;
        CHECK_THROWS_AS(solve_rl(spec, 1e-8, 10), hypothesis_error);
    }
    SUBCASE("Lipschitz violation is rejected") {
        RLSpec spec = constant_rl();
        spec.c2 = 3.0;
        spec.f = [](double u) { return 1.0 + u * u; };
        spec.Lf = 0.1;  // too small for the sampled quotients
        CHECK_THROWS_AS(solve_rl(spec, 1e-8, 10), hypothesis_error);
    }
    SUBCASE("iterates escaping [c1, c2] leave a warning") {
        RLSpec spec = constant_rl();
        spec.f = [](double u) { return 1.0 + u; };
        spec.c2 = 1.05;
        spec.Lf = 1.0;
        spec.lambda = 0.2;
        RLSolveOptions options;
        options.picard.tol = 1e-10;
        options.picard.max_iter = 100;
        options.spot_check = false;
        const ThermistorResult res = solve_rl(spec, options);
        CHECK(res.report.converged);
        CHECK(!res.report.warnings.empty());
    }
}

TEST_CASE("spec validation errors") {
    RLSpec spec = constant_rl();
    spec.alpha = 0.5;
    CHECK_THROWS_AS(validate(spec), domain_error);
    spec = constant_rl();
    spec.c1 = 2.0;  // c1 > c2
    CHECK_THROWS_AS(validate(spec), domain_error);
    spec = constant_rl();
    spec.f = nullptr;
    CHECK_THROWS_AS(validate(spec), validation_error);
}

TEST_CASE("caputo local radius") {
    CaputoSpec spec = unit_caputo();
    // b = lambda = M = c1 = 1, alpha = 1/4: h = Gamma(3/2)^2 = pi/4.
    CHECK(caputo_local_radius(spec) == doctest::Approx(M_PI / 4.0).epsilon(1e-12));
    SUBCASE("clamped by the horizon") {
        spec.T = 0.3;
        CHECK(caputo_local_radius(spec) == 0.3);
    }
    SUBCASE("doubling the ball radius scales the window by 2^{1/(2 alpha)}") {
        CaputoSpec big = unit_caputo();
        big.ball_radius = 2.0;
        CHECK(caputo_local_radius(big) ==
              doctest::Approx(4.0 * caputo_local_radius(spec)).epsilon(1e-12));
    }
    SUBCASE("continuation window caps at 1") {
        CaputoSpec wide = unit_caputo();
        wide.ball_radius = 100.0;
        CHECK(caputo_continuation_window(wide) == 1.0);
        CHECK(caputo_continuation_window(spec) == doctest::Approx(M_PI / 4.0).epsilon(1e-12));
    }
}

TEST_CASE("caputo solve with constant f has the closed-form profile") {
    // With f = 1 the prefix integral is t, so u = u0 + lambda t^{2a-2}/Gamma(2a+1),
    // and both quadratures are exact for constants.
    const CaputoSpec spec = unit_caputo();
    const SolveReport rep = solve_caputo_local(spec, 1e-10, 50);
    CHECK(rep.converged);
    CHECK(rep.solution.node(rep.solution.size() - 1) == doctest::Approx(M_PI / 4.0));
    double rel = 0.0;
    for (std::size_t j = 1; j < rep.solution.size(); ++j) {
        const double t = rep.solution.node(j);
        const double exact = 1.0 + std::pow(t, -1.5) / gamma_fn(1.5);
        rel = std::max(rel, std::abs(rep.solution.value(j) - exact) / exact);
    }
    CHECK(rel < 1e-12);
    CHECK(rep.solution.value(0) == 1.0);
}

TEST_CASE("caputo solve trivial and error paths") {
    SUBCASE("lambda = 0 keeps the initial value") {
        CaputoSpec spec = unit_caputo();
        spec.lambda = 0.0;
        spec.T = 2.0;
        const SolveReport rep = solve_caputo_local(spec, 1e-12, 10);
        CHECK(rep.converged);
        CHECK(rep.iterations == 1);
        for (std::size_t j = 0; j < rep.solution.size(); ++j) {
            CHECK(rep.solution.value(j) == 1.0);
        }
    }
    SUBCASE("vanishing conductivity collapses the denominator") {
        CaputoSpec spec = unit_caputo();
        spec.f = [](double, double) { return 1e-40; };
        spec.c1 = 1e-45;
        spec.c2 = 1e-39;
        CHECK_THROWS_AS(solve_caputo_local(spec, 1e-8, 10), singularity_error);
    }
    SUBCASE("test hook replaces the nonlocal factor") {
        CaputoSpec spec = unit_caputo();
        spec.nonlocal_override = 0.5;
        spec.T = 1.0;
        spec.lambda = 1.0;
        const SolveReport rep = solve_caputo_local(spec, 1e-12, 10);
        CHECK(rep.converged);
        double err = 0.0;
        for (std::size_t j = 0; j < rep.solution.size(); ++j) {
            const double t = rep.solution.node(j);
            err = std::max(err,
                           std::abs(rep.solution.value(j) -
                                    (1.0 + 0.5 * std::pow(t, 0.5) / gamma_fn(1.5))));
        }
        CHECK(err < 1e-12);
    }
}

TEST_CASE("caputo continuation") {
    SUBCASE("continuing the lambda = 0 solution changes nothing") {
        CaputoSpec spec = unit_caputo();
        spec.lambda = 0.0;
        spec.T = 1.0;
        const SolveReport base = solve_caputo_local(spec, 1e-12, 10);
        const SolveReport extended = continue_caputo(base, spec, 1e-12, 10);
        CHECK(extended.converged);
        CHECK(extended.solution.size() > base.solution.size());
        for (std::size_t j = 0; j < extended.solution.size(); ++j) {
            CHECK(extended.solution.value(j) == 1.0);
        }
    }
    SUBCASE("direct solve and solve-then-continue agree") {
        const CaputoSpec spec = unit_caputo();
        const double tol = 1e-10;
        const SolveReport first = solve_caputo_local(spec, tol, 50);
        const SolveReport continued = continue_caputo(first, spec, tol, 50);

        CaputoSpec direct = spec;
        direct.ball_radius = spec.ball_radius * std::pow(2.0, 2.0 * spec.alpha);
        direct.grid = GridPolicy{2 * spec.grid.n, 1.0};
        const SolveReport whole = solve_caputo_local(direct, tol, 50);

        CHECK(continued.solution.node(continued.solution.size() - 1) ==
              doctest::Approx(whole.solution.node(whole.solution.size() - 1)).epsilon(1e-12));
        double worst = 0.0;
        std::size_t matched = 0;
        for (std::size_t i = 0; i < whole.solution.size(); ++i) {
            const double t = whole.solution.node(i);
            for (std::size_t k = 0; k < continued.solution.size(); ++k) {
                if (std::abs(continued.solution.node(k) - t) <=
                    1e-12 * std::max(1.0, std::abs(t))) {
                    worst = std::max(worst,
                                     std::abs(whole.solution.value(i) -
                                              continued.solution.value(k)));
                    ++matched;
                    break;
                }
            }
        }
        CHECK(matched == whole.solution.size());
        CHECK(worst <= 5.0 * tol + 1e-3);
    }
    SUBCASE("refuses to continue an unconverged run") {
        CaputoSpec spec = unit_caputo();
        SolveReport fake = solve_caputo_local(spec, 1e-10, 50);
        fake.converged = false;
        CHECK_THROWS_AS(continue_caputo(fake, spec, 1e-10, 50), domain_error);
    }
}

TEST_CASE("gronwall envelope") {
    const auto nodes = make_grid(1.0, {2048, 2.0});
    SUBCASE("zero forcing gives the zero envelope") {
        const GridFn env = gronwall_envelope(GridFn::constant(nodes, 0.0), 0.1, FracOrder(0.5));
        for (std::size_t j = 0; j < env.size(); ++j) {
            CHECK(env.value(j) == 0.0);
        }
    }
    SUBCASE("tiny feedback returns the forcing") {
        const GridFn env = gronwall_envelope(GridFn::constant(nodes, 1.0), 1e-12, FracOrder(0.5));
        for (std::size_t j = 0; j < env.size(); j += 101) {
            CHECK(env.value(j) == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
    SUBCASE("matches the Mittag-Leffler series") {
        const GridFn env = gronwall_envelope(GridFn::constant(nodes, 1.0), 0.1, FracOrder(0.5));
        const double a_ml = 0.1 * gamma_fn(0.5);
        for (double t : {0.25, 0.5, 1.0}) {
            const double want = oracle::mittag_leffler(0.5, a_ml * std::sqrt(t), 60).value;
            CHECK(env(t) == doctest::Approx(want).epsilon(1e-4));
        }
    }
    SUBCASE("dominates a certified run") {
        CaputoSpec spec = unit_caputo();
        spec.nonlocal_override = 0.5;
        spec.T = 1.0;
        const SolveReport rep = solve_caputo_local(spec, 1e-12, 20);
        // The constant factor satisfies K/Gamma(2a) <= a_cert |u| with
        // a_cert = K/(Gamma(2a) u0), since u >= u0 = 1 > 0 here.
        const double a_cert = 0.5 / gamma_fn(0.5);
        const std::vector<double> run_nodes(rep.solution.nodes().begin(),
                                            rep.solution.nodes().end());
        const GridFn w = GridFn::constant(run_nodes, 1.0);
        const GridFn env = gronwall_envelope(w, a_cert, FracOrder(1.0 - 0.5));
        for (std::size_t j = 0; j < rep.solution.size(); ++j) {
            CHECK(std::abs(rep.solution.value(j)) <= env.value(j) * (1.0 + 1e-9) + 1e-12);
        }
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(gronwall_envelope(GridFn::constant(nodes, 1.0), 0.0, FracOrder(0.5)),
                        domain_error);
        CHECK_THROWS_AS(gronwall_envelope(GridFn::constant(nodes, -1.0), 0.1, FracOrder(0.5)),
                        domain_error);
    }
}

TEST_CASE("global growth certificate") {
    CaputoSpec spec = unit_caputo();
    spec.T = 1.0;
    SUBCASE("constant f") {
        spec.f = [](double, double) { return 1.0; };
        CHECK(check_global_growth(spec, 0.5, 1.0, 1.0));
    }
    SUBCASE("quadratic beats the linear bound at u = 2") {
        spec.f = [](double, double u) { return u * u; };
        spec.ball_radius = 2.0;
        spec.u0 = 0.0;
        CHECK_FALSE(check_global_growth(spec, 0.001, 1.0, 0.001));
    }
    SUBCASE("bounded oscillation") {
        spec.f = [](double, double u) { return 1.0 + std::abs(std::sin(u)); };
        CHECK(check_global_growth(spec, 1.0, 0.001, 2.0));
    }
    SUBCASE("constants must be positive") {
        CHECK_THROWS_AS(check_global_growth(spec, 0.0, 1.0, 1.0), domain_error);
    }
}

TEST_CASE("time-scale thermistor thresholds and bounds") {
    TSSpec spec{TimeScale::interval(0.0, 1.0), 0.25, 0.1, 1.0,
                [](double) { return 1.0; }, 1.0, 1.0, 1.0, GridPolicy{64, 1.0}};
    // alpha = 1/4, T = c1 = c2 = Lf = 1: the bracket is 3/Gamma(3/2).
    CHECK(uniqueness_threshold_ts(spec) ==
          doctest::Approx(gamma_fn(1.5) / 3.0).epsilon(1e-12));
    SUBCASE("sentinel for Lf = 0") {
        spec.Lf = 0.0;
        CHECK(std::isinf(uniqueness_threshold_ts(spec)));
    }
    SUBCASE("horizon must close the scale") {
        spec.T = 0.5;
        CHECK_THROWS_AS(validate(spec), domain_error);
    }
    SUBCASE("scale must start at zero") {
        TSSpec shifted = spec;
        shifted.scale = TimeScale::interval(0.5, 1.0);
        shifted.T = 1.0;
        CHECK_THROWS_AS(validate(shifted), domain_error);
    }
}

TEST_CASE("solve_ts on a single interval matches solve_rl") {
    auto sigmoid = [](double u) { return 1.0 + 1.0 / (1.0 + u * u); };
    TSSpec tspec{TimeScale::interval(0.0, 1.0), 0.25, 0.05, 1.0, sigmoid,
                 1.0, 2.0, 0.65, GridPolicy{1024, 2.0}};
    const ThermistorResult ts = solve_ts(tspec, 1e-10, 200);
    RLSpec rspec = sigmoid_rl();
    rspec.lambda = 0.05;
    const ThermistorResult rl = solve_rl(rspec, 1e-10, 200);
    CHECK(ts.report.converged);
    CHECK(sup_distance(ts.report.solution, rl.report.solution) < 1e-4);
    CHECK(ts.bounds.satisfied);
}

TEST_CASE("solve_ts on discrete scales") {
    const TimeScale five = TimeScale::discrete({0.0, 0.25, 0.5, 0.75, 1.0});
    auto sigmoid = [](double u) { return 1.0 + 1.0 / (1.0 + u * u); };
    SUBCASE("lambda = 0 gives the zero solution") {
        TSSpec spec{five, 0.25, 0.0, 1.0, sigmoid, 1.0, 2.0, 0.65, GridPolicy{4, 1.0}};
        const ThermistorResult res = solve_ts(spec, 1e-12, 20);
        CHECK(res.report.converged);
        for (std::size_t j = 0; j < res.report.solution.size(); ++j) {
            CHECK(res.report.solution.value(j) == 0.0);
        }
    }
    SUBCASE("the fixed point satisfies the explicit finite-sum equation") {
        TSSpec spec{five, 0.25, 0.1, 1.0, sigmoid, 1.0, 2.0, 0.65, GridPolicy{4, 1.0}};
        const ThermistorResult res = solve_ts(spec, 1e-12, 300);
        const auto& u = res.report.solution;
        std::vector<double> fv(u.size());
        for (std::size_t j = 0; j < u.size(); ++j) {
            fv[j] = sigmoid(u.value(j));
        }
        double denom_root = 0.0;
        for (std::size_t j = 0; j + 1 < u.size(); ++j) {
            denom_root += fv[j] * (u.node(j + 1) - u.node(j));
        }
        double worst = 0.0;
        for (std::size_t j = 1; j < u.size(); ++j) {
            const double sum =
                oracle::discrete_ts_sum(five, fv, FracOrder(0.5), u.node(j)).value;
            worst = std::max(worst,
                             std::abs(u.value(j) - 0.1 * sum / (denom_root * denom_root)));
        }
        CHECK(worst <= 1e-10);
    }
    SUBCASE("constant f on a three-point scale against the oracle") {
        const TimeScale three = TimeScale::discrete({0.0, 0.5, 1.0});
        TSSpec spec{three, 0.25, 0.1, 1.0, [](double) { return 2.0; },
                    2.0, 2.0, 0.0, GridPolicy{2, 1.0}};
        const ThermistorResult res = solve_ts(spec, 1e-13, 20);
        const std::vector<double> f2(3, 2.0);
        const double D = 2.0;  // exact left sum of f = 2 over [0,1]
        for (std::size_t j = 1; j < res.report.solution.size(); ++j) {
            const double sum =
                oracle::discrete_ts_sum(three, f2, FracOrder(0.5), res.report.solution.node(j))
                    .value;
            CHECK(res.report.solution.value(j) ==
                  doctest::Approx(0.1 * sum / (D * D)).epsilon(1e-12));
        }
    }
}

TEST_CASE("norm weight scan reports the maximizer") {
    RLSpec spec = sigmoid_rl();
    const WeightScan scan = scan_weight_rl(spec);
    REQUIRE(scan.table.size() == 5);
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& entry : scan.table) {
        best = std::max(best, entry.threshold);
    }
    CHECK(scan.best_threshold == best);
    RLSpec probe = spec;
    probe.weight_N = scan.best_N;
    CHECK(uniqueness_threshold_rl(probe) == scan.best_threshold);
}
