#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "verify.hpp"

int main(int argc, char** argv) {
    using namespace fracsolve::cli;

    CLI::App app{"fracsolve: weakly singular Volterra and fractional thermistor solver"};
    app.require_subcommand(1);

    std::string config_path;
    std::string dump_spec_path;
    auto* run = app.add_subcommand("run", "execute a problem described by a config JSON file");
    run->add_option("config", config_path, "path to the config JSON")->required();
    run->add_option("--dump-spec", dump_spec_path,
                    "write the normalized config to this path and exit without running");

    std::string suite;
    auto* verify = app.add_subcommand("verify", "run an oracle-comparison suite");
    verify->add_option("suite", suite, "operators | volterra | thermistor | timescale | all")
        ->required();

    std::string apply, in_path, out_path;
    double alpha = 0.5;
    auto* op = app.add_subcommand("op", "apply a fractional operator to a CSV series");
    op->add_option("--apply", apply, "Ialpha | Dalpha | Calpha")->required();
    op->add_option("--alpha", alpha, "fractional order in (0, 1)")->required();
    op->add_option("--in", in_path, "input CSV (t,u)")->required();
    op->add_option("--out", out_path, "output CSV")->required();

    std::string threshold_config;
    auto* threshold =
        app.add_subcommand("threshold", "print uniqueness threshold and a priori bound numbers");
    threshold->add_option("config", threshold_config, "path to an rl or ts config JSON")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (run->parsed()) {
            return run_command(config_path, dump_spec_path);
        }
        if (verify->parsed()) {
            return verify_command(suite);
        }
        if (op->parsed()) {
            return op_command(apply, alpha, in_path, out_path);
        }
        if (threshold->parsed()) {
            return threshold_command(threshold_config);
        }
    } catch (...) {
        return exit_code_for_current_exception();
    }
    return kExitInputError;
}
