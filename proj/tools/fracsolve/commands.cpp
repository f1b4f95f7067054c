#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <utility>
#include <vector>

#include "fracsolve/errors.hpp"
#include "fracsolve/expr.hpp"
#include "fracsolve/frac_ops.hpp"
#include "fracsolve/thermistor.hpp"
#include "fracsolve/volterra.hpp"
#include "csv.hpp"

namespace fracsolve::cli {

namespace {

using nlohmann::json;

ExprFn compile(const std::string& src, const char* role, bool allow_t, bool allow_s,
               bool allow_u) {
    ExprFn fn = ExprFn::parse(src);
    if ((fn.uses_t() && !allow_t) || (fn.uses_s() && !allow_s) || (fn.uses_u() && !allow_u)) {
        throw validation_error(std::string(role) + " expression '" + src +
                               "' references a variable not available in this role");
    }
    return fn;
}

GridPolicy grid_policy(const RunConfig& c) {
    return GridPolicy{c.grid_n, effective_gamma(c)};
}

json base_report(const RunConfig& c) {
    json r;
    r["kind"] = to_string(c.kind);
    r["converged"] = true;
    r["iterations"] = 0;
    r["contraction_factor"] = 0.0;
    r["residual"] = 0.0;
    r["threshold"] = nullptr;
    r["bound"] = nullptr;
    r["bound_satisfied"] = nullptr;
    r["warnings"] = json::array();
    return r;
}

void fill_report(json& r, const SolveReport& rep) {
    r["converged"] = rep.converged;
    r["iterations"] = rep.iterations;
    r["contraction_factor"] = rep.contraction_factor;
    r["residual"] = rep.residual;
    r["warnings"] = rep.warnings;
}

void fill_bounds(json& r, const BoundReport& bounds) {
    if (std::isfinite(bounds.threshold)) {
        r["threshold"] = bounds.threshold;
    }
    r["bound"] = bounds.bound;
    r["bound_satisfied"] = bounds.satisfied;
}

void write_report(const std::string& path, json r, double wall_ms) {
    if (path.empty()) {
        return;
    }
    r["wall_time_ms"] = wall_ms;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw validation_error("cannot open '" + path + "' for writing");
    }
    out << r.dump(2) << '\n';
}

RLSpec build_rl(const RunConfig& c) {
    const ExprFn f = compile(c.f_src, "f", false, false, true);
    const ExprFn h = compile(c.h_src, "h", true, false, false);
    RLSpec spec;
    spec.alpha = c.alpha;
    spec.lambda = c.lambda;
    spec.T = c.T;
    spec.weight_N = c.N;
    spec.f = [f](double u) { return f(0.0, 0.0, u); };
    spec.h = [h](double t) { return h(t, 0.0, 0.0); };
    spec.c1 = c.c1;
    spec.c2 = c.c2;
    spec.Lf = c.Lf;
    spec.grid = grid_policy(c);
    return spec;
}

TSSpec build_ts(const RunConfig& c) {
    const ExprFn f = compile(c.f_src, "f", false, false, true);
    TimeScale scale = TimeScale::from_json(c.timescale_json);
    const double horizon = scale.max();
    TSSpec spec{std::move(scale),
                c.alpha,
                c.lambda,
                horizon,
                [f](double u) { return f(0.0, 0.0, u); },
                c.c1,
                c.c2,
                c.Lf,
                grid_policy(c)};
    return spec;
}

CaputoSpec build_caputo(const RunConfig& c) {
    const ExprFn f = compile(c.f_src, "f", false, true, true);
    CaputoSpec spec;
    spec.alpha = c.alpha;
    spec.lambda = c.lambda;
    spec.u0 = c.u0;
    spec.f = [f](double s, double u) { return f(0.0, s, u); };
    spec.c1 = c.c1;
    spec.c2 = c.c2;
    spec.Lf = c.Lf;
    spec.M = c.M;
    spec.omega = c.omega;
    spec.ball_radius = c.b;
    spec.T = c.T;
    spec.grid = grid_policy(c);
    return spec;
}

PicardOptions picard_options(const RunConfig& c) {
    PicardOptions opts;
    opts.tol = c.tol;
    opts.max_iter = c.max_iter;
    return opts;
}

GridFn apply_operator(const std::string& apply, double alpha, const GridFn& data) {
    const FracOrder order(alpha);
    if (apply == "Ialpha") {
        return rl_integral(data, order);
    }
    if (apply == "Dalpha") {
        return rl_derivative(data, order);
    }
    if (apply == "Calpha") {
        return caputo_derivative(data, order);
    }
    throw validation_error("unknown operator '" + apply + "' (expected Ialpha, Dalpha or Calpha)");
}

int finish(const RunConfig& c, const SolveReport& rep, json report,
           std::chrono::steady_clock::time_point t0) {
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    fill_report(report, rep);
    if (!c.out.csv.empty()) {
        write_csv(c.out.csv, rep.solution);
    }
    write_report(c.out.report, std::move(report), wall_ms);
    if (!rep.converged) {
        std::cerr << "fracsolve: did not converge within " << c.max_iter << " iterations\n";
        return kExitDivergence;
    }
    if (!rep.warnings.empty()) {
        for (const auto& w : rep.warnings) {
            std::cerr << "fracsolve: warning: " << w << '\n';
        }
        return kExitHypothesis;
    }
    return kExitOk;
}

}  // namespace

int run_command(const std::string& config_path, const std::string& dump_spec_path) {
    const RunConfig c = load_config(config_path);
    if (!dump_spec_path.empty()) {
        std::ofstream out(dump_spec_path, std::ios::binary);
        if (!out) {
            throw validation_error("cannot open '" + dump_spec_path + "' for writing");
        }
        out << dump_config(c).dump(2) << '\n';
        return kExitOk;
    }

    const auto t0 = std::chrono::steady_clock::now();
    json report = base_report(c);

    try {
        switch (c.kind) {
            case Kind::rl: {
                const RLSpec spec = build_rl(c);
                RLSolveOptions options;
                options.picard = picard_options(c);
                const ThermistorResult res = solve_rl(spec, options);
                fill_bounds(report, res.bounds);
                return finish(c, res.report, std::move(report), t0);
            }
            case Kind::ts: {
                const TSSpec spec = build_ts(c);
                const ThermistorResult res = solve_ts(spec, picard_options(c));
                fill_bounds(report, res.bounds);
                return finish(c, res.report, std::move(report), t0);
            }
            case Kind::caputo: {
                const CaputoSpec spec = build_caputo(c);
                const SolveReport rep = solve_caputo_local(spec, picard_options(c));
                return finish(c, rep, std::move(report), t0);
            }
            case Kind::abel1: {
                const ExprFn fexpr = compile(c.f_src, "f", true, false, false);
                const GridFn f = GridFn::sample(make_grid(c.T, grid_policy(c)),
                                                [&](double t) { return fexpr(t, 0.0, 0.0); });
                const GridFn g = abel_first_kind_convolution(f, FracOrder(c.alpha));
                const double wall_ms = std::chrono::duration<double, std::milli>(
                                           std::chrono::steady_clock::now() - t0)
                                           .count();
                if (!c.out.csv.empty()) {
                    write_csv(c.out.csv, g);
                }
                write_report(c.out.report, std::move(report), wall_ms);
                return kExitOk;
            }
            case Kind::abel2: {
                const ExprFn fexpr = compile(c.f_src, "f", true, false, false);
                const ExprFn kexpr = compile(c.kernel_src, "kernel", true, true, false);
                const GridFn f = GridFn::sample(make_grid(c.T, grid_policy(c)),
                                                [&](double t) { return fexpr(t, 0.0, 0.0); });
                const SolveReport rep = abel_second_kind(
                    f, [&](double x, double s) { return kexpr(x, s, 0.0); }, FracOrder(c.alpha),
                    picard_options(c));
                return finish(c, rep, std::move(report), t0);
            }
            case Kind::op: {
                const GridFn data = read_csv(c.input_csv);
                const GridFn out = apply_operator(c.apply, c.alpha, data);
                const double wall_ms = std::chrono::duration<double, std::milli>(
                                           std::chrono::steady_clock::now() - t0)
                                           .count();
                if (!c.out.csv.empty()) {
                    write_csv(c.out.csv, out);
                }
                write_report(c.out.report, std::move(report), wall_ms);
                return kExitOk;
            }
        }
        return kExitInputError;
    } catch (const divergence_error& e) {
        const double wall_ms = std::chrono::duration<double, std::milli>(
                                   std::chrono::steady_clock::now() - t0)
                                   .count();
        report["converged"] = false;
        report["divergence_trace"] = e.trace();
        write_report(c.out.report, std::move(report), wall_ms);
        std::cerr << "fracsolve: " << e.what() << '\n';
        return kExitDivergence;
    }
}

int threshold_command(const std::string& config_path) {
    const RunConfig c = load_config(config_path);
    char buf[128];
    switch (c.kind) {
        case Kind::rl: {
            const RLSpec spec = build_rl(c);
            std::snprintf(buf, sizeof(buf), "threshold_lambda = %.12g",
                          uniqueness_threshold_rl(spec));
            std::cout << buf << '\n';
            std::snprintf(buf, sizeof(buf), "bound            = %.12g", bound_rl(spec));
            std::cout << buf << '\n';
            const WeightScan scan = scan_weight_rl(spec);
            for (const auto& entry : scan.table) {
                std::snprintf(buf, sizeof(buf), "N = %-4g -> threshold %.12g", entry.N,
                              entry.threshold);
                std::cout << buf << '\n';
            }
            std::snprintf(buf, sizeof(buf), "best_N           = %g", scan.best_N);
            std::cout << buf << '\n';
            return kExitOk;
        }
        case Kind::ts: {
            const TSSpec spec = build_ts(c);
            std::snprintf(buf, sizeof(buf), "threshold_lambda = %.12g",
                          uniqueness_threshold_ts(spec));
            std::cout << buf << '\n';
            std::snprintf(buf, sizeof(buf), "bound            = %.12g", bound_ts(spec));
            std::cout << buf << '\n';
            return kExitOk;
        }
        default:
            throw validation_error("threshold requires a config of kind 'rl' or 'ts'");
    }
}

int op_command(const std::string& apply, double alpha, const std::string& in_path,
               const std::string& out_path) {
    const GridFn data = read_csv(in_path);
    const GridFn out = apply_operator(apply, alpha, data);
    write_csv(out_path, out);
    return kExitOk;
}

int exit_code_for_current_exception() {
    try {
        throw;
    } catch (const divergence_error& e) {
        std::cerr << "fracsolve: " << e.what() << '\n';
        return kExitDivergence;
    } catch (const singularity_error& e) {
        std::cerr << "fracsolve: " << e.what() << '\n';
        return kExitDivergence;
    } catch (const hypothesis_error& e) {
        std::cerr << "fracsolve: " << e.what() << '\n';
        return kExitHypothesis;
    } catch (const std::exception& e) {
        std::cerr << "fracsolve: " << e.what() << '\n';
        return kExitInputError;
    }
}

}  // namespace fracsolve::cli
