#include "verify.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include "fracsolve/errors.hpp"
#include "fracsolve/frac_ops.hpp"
#include "fracsolve/gamma.hpp"
#include "fracsolve/oracle.hpp"
#include "fracsolve/thermistor.hpp"
#include "fracsolve/time_scale.hpp"
#include "fracsolve/volterra.hpp"
#include "commands.hpp"

namespace fracsolve::cli {

namespace {

struct Check {
    std::string name;
    double got;
    double want;
    double tol;  // on |got - want| / max(1, |want|)
};

class Suite {
public:
    void add(std::string name, double got, double want, double tol) {
        checks_.push_back({std::move(name), got, want, tol});
    }

    bool report() const {
        bool all = true;
        for (const auto& c : checks_) {
            const double err = std::abs(c.got - c.want) / std::max(1.0, std::abs(c.want));
            const bool pass = err <= c.tol;
            all = all && pass;
            std::printf("%-4s %-44s got %-22.15g want %-22.15g err %.2e tol %.0e\n",
                        pass ? "PASS" : "FAIL", c.name.c_str(), c.got, c.want, err, c.tol);
        }
        return all;
    }

private:
    std::vector<Check> checks_;
};

void suite_operators(Suite& s) {
    const GridPolicy policy{2048, 2.0};
    for (double mu : {0.0, 1.0, 2.0}) {
        for (double alpha : {0.1, 0.3, 0.49}) {
            const auto nodes = make_grid(1.0, policy);
            const GridFn g =
                GridFn::sample(nodes, [mu](double t) { return mu == 0.0 ? 1.0 : std::pow(t, mu); });
            const GridFn I = rl_integral(g, FracOrder(alpha));
            double err = 0.0, scale = 0.0;
            for (std::size_t j = 0; j < I.size(); ++j) {
                const double want =
                    oracle::power_law_rl_integral(mu, FracOrder(alpha), I.node(j)).value;
                err = std::max(err, std::abs(I.value(j) - want));
                scale = std::max(scale, std::abs(want));
            }
            char name[64];
            std::snprintf(name, sizeof(name), "power-law mu=%g alpha=%g", mu, alpha);
            s.add(name, err / scale, 0.0, 1e-3);
        }
    }
    {
        // D^alpha t^alpha is the constant Gamma(1+alpha).
        const double alpha = 0.3;
        const auto nodes = make_grid(1.0, policy);
        const GridFn g = GridFn::sample(nodes, [&](double t) { return std::pow(t, alpha); });
        const GridFn D = rl_derivative(g, FracOrder(alpha));
        const double want = gamma_fn(1.0 + alpha);
        double err = 0.0;
        for (std::size_t j = 4; j + 1 < D.size(); ++j) {
            err = std::max(err, std::abs(D.value(j) - want));
        }
        s.add("derivative of t^alpha (interior)", err / want, 0.0, 1e-3);
    }
    {
        // Caputo derivative of t^2 at t = 1: the power rule gives 2/Gamma(3-alpha).
        const double alpha = 0.6;
        const auto nodes = make_grid(1.0, policy);
        const GridFn g = GridFn::sample(nodes, [](double t) { return t * t; });
        const GridFn D = caputo_derivative(g, FracOrder(alpha));
        s.add("caputo t^2 at t=1", D.value(D.size() - 1), 1.6100864256943252, 1e-4);
    }
}

void suite_volterra(Suite& s) {
    {
        // Linear case: the fixed point is the Mittag-Leffler function.
        VolterraProblem p{FracOrder(0.5), 1.0, 1.0, [](double, double u) { return u; },
                          GridPolicy{2048, 2.0}};
        const SolveReport rep = picard_solve(p, 1e-10, 200);
        const double want = oracle::mittag_leffler(0.5, 0.5, 60).value;
        s.add("picard linear at t=0.25", rep.solution(0.25), want, 1e-5);
        s.add("picard linear converged", rep.converged ? 1.0 : 0.0, 1.0, 0.0);
    }
    {
        // First-kind round trip for g(s) = s.
        const double alpha = 0.5;
        const auto nodes = make_grid(1.0, GridPolicy{2048, 2.0});
        const GridFn f = GridFn::sample(nodes, [&](double x) {
            return oracle::power_law_rl_integral(1.0, FracOrder(1.0 - alpha), x).value;
        });
        const GridFn g = abel_first_kind_convolution(f, FracOrder(alpha));
        double err = 0.0;
        for (std::size_t j = 4; j + 1 < g.size(); ++j) {
            err = std::max(err, std::abs(g.value(j) - g.node(j)));
        }
        s.add("abel first-kind round trip", err, 0.0, 1e-3);
    }
    {
        // Second-kind with the convolution kernel and manufactured g(s) = s.
        const double alpha = 0.5;
        const auto nodes = make_grid(1.0, GridPolicy{2048, 2.0});
        const GridFn f = GridFn::sample(nodes, [&](double x) {
            return x + oracle::power_law_rl_integral(1.0, FracOrder(1.0 - alpha), x).value;
        });
        const SolveReport rep = abel_second_kind(
            f, [&](double, double) { return 1.0 / std::tgamma(1.0 - alpha); }, FracOrder(alpha),
            1e-10, 200);
        double err = 0.0;
        for (std::size_t j = 0; j < rep.solution.size(); ++j) {
            err = std::max(err, std::abs(rep.solution.value(j) - rep.solution.node(j)));
        }
        s.add("abel second-kind round trip", err, 0.0, 1e-3);
    }
}

void suite_thermistor(Suite& s) {
    {
        RLSpec spec;
        spec.alpha = 0.25;
        spec.lambda = 0.1;
        spec.T = 1.0;
        spec.f = [](double) { return 1.0; };
        spec.grid = GridPolicy{1024, 2.0};
        const ThermistorResult res = solve_rl(spec, 1e-10, 50);
        double err = 0.0;
        for (std::size_t j = 0; j < res.report.solution.size(); ++j) {
            const double t = res.report.solution.node(j);
            err = std::max(err, std::abs(res.report.solution.value(j) -
                                         0.1 * std::sqrt(t) / std::tgamma(1.5)));
        }
        s.add("rl constant-f closed form", err, 0.0, 1e-4);
        s.add("rl constant-f iterations <= 3", res.report.iterations <= 3 ? 1.0 : 0.0, 1.0, 0.0);
    }
    {
        RLSpec spec;
        spec.alpha = 0.25;
        spec.lambda = 0.1;
        spec.T = 1.0;
        spec.weight_N = 1.0;
        spec.f = [](double) { return 1.0; };
        spec.c1 = spec.c2 = 1.0;
        spec.Lf = 1.0;
        const double want = 1.0 / (1.0 + 2.0 * std::exp(1.0));
        s.add("threshold rl", uniqueness_threshold_rl(spec), want, 1e-9);
    }
    {
        TSSpec spec{TimeScale::interval(0.0, 1.0), 0.25, 0.1, 1.0, [](double) { return 1.0; },
                    1.0, 1.0, 1.0, GridPolicy{64, 1.0}};
        const double want = std::tgamma(1.5) / 3.0;
        s.add("threshold ts", uniqueness_threshold_ts(spec), want, 1e-9);
    }
    {
        const auto nodes = make_grid(1.0, GridPolicy{2048, 2.0});
        const GridFn w = GridFn::constant(nodes, 1.0);
        const GridFn env = gronwall_envelope(w, 0.1, FracOrder(0.5));
        const double a_ml = 0.1 * std::tgamma(0.5);
        for (double t : {0.25, 0.5, 1.0}) {
            const double want = oracle::mittag_leffler(0.5, a_ml * std::sqrt(t), 60).value;
            char name[48];
            std::snprintf(name, sizeof(name), "gronwall envelope at t=%g", t);
            s.add(name, env(t), want, 1e-4);
        }
    }
}

void suite_timescale(Suite& s) {
    {
        // Single-interval scale reduces to the real-line operator.
        const TimeScale scale = TimeScale::interval(0.0, 1.0);
        const TsGridFn g = TsGridFn::sample(scale, GridPolicy{2048, 2.0},
                                            [](double t) { return 1.0 + t + t * t; });
        const auto nodes = make_grid(1.0, GridPolicy{2048, 2.0});
        const GridFn gr = GridFn::sample(nodes, [](double t) { return 1.0 + t + t * t; });
        const GridFn I = rl_integral(gr, FracOrder(0.3));
        double err = 0.0, scalemax = 0.0;
        for (std::size_t j = 1; j < nodes.size(); j += 97) {
            const double v = ts_frac_integral(g, FracOrder(0.3), 0.0, nodes[j]);
            err = std::max(err, std::abs(v - I.value(j)));
            scalemax = std::max(scalemax, std::abs(I.value(j)));
        }
        s.add("continuum reduction", err / scalemax, 0.0, 1e-6);
    }
    {
        // Purely discrete scale: the exact left sum.
        const TimeScale scale = TimeScale::discrete({0.0, 0.25, 0.5, 0.75, 1.0});
        const TsGridFn g = TsGridFn::sample(scale, GridPolicy{4, 1.0}, [](double) { return 1.0; });
        s.add("hZ delta integral", delta_integral(g, 0.0, 1.0), 1.0, 0.0);
        const std::vector<double> ones(5, 1.0);
        const double want = oracle::discrete_ts_sum(scale, ones, FracOrder(0.5), 1.0).value;
        s.add("hZ fractional sum", ts_frac_integral(g, FracOrder(0.5), 0.0, 1.0), want, 1e-13);
    }
    {
        const TimeScale scale = TimeScale({Segment{0.0, 0.5}, Segment{1.0, 1.0}});
        const TsGridFn g = TsGridFn::sample(scale, GridPolicy{64, 1.0},
                                            [](double t) { return t; });
        const ExtensionBound bound = extension_bound_check(g, 0.0, 1.0);
        s.add("extension bound lhs", bound.lhs, 0.375, 1e-12);
        s.add("extension bound holds", bound.holds ? 1.0 : 0.0, 1.0, 0.0);
    }
}

}  // namespace

int verify_command(const std::string& suite) {
    Suite s;
    if (suite == "operators") {
        suite_operators(s);
    } else if (suite == "volterra") {
        suite_volterra(s);
    } else if (suite == "thermistor") {
        suite_thermistor(s);
    } else if (suite == "timescale") {
        suite_timescale(s);
    } else if (suite == "all") {
        suite_operators(s);
        suite_volterra(s);
        suite_thermistor(s);
        suite_timescale(s);
    } else {
        throw validation_error("unknown verify suite '" + suite +
                               "' (expected operators, volterra, thermistor, timescale or all)");
    }
    return s.report() ? kExitOk : kExitVerifyFailed;
}

}  // namespace fracsolve::cli
