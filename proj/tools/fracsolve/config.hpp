#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include <json.hpp>

namespace fracsolve::cli {

enum class Kind { rl, caputo, ts, abel1, abel2, op };

Kind kind_from_string(const std::string& name);
std::string to_string(Kind kind);

struct OutPaths {
    std::string csv;
    std::string report;
};

/// One batch job, as described by a config JSON file.  Expressions stay as
/// source text here; they are compiled when the job is built.
struct RunConfig {
    Kind kind = Kind::rl;
    double alpha = 0.25;
    double lambda = 0.0;
    double T = 1.0;
    double N = 1.0;
    std::string f_src = "1";
    std::string h_src = "0";
    std::string kernel_src;
    double c1 = 1.0;
    double c2 = 1.0;
    double Lf = 0.0;
    // caputo extras
    double u0 = 0.0;
    double b = 1.0;
    double M = 1.0;
    double omega = 2.0;
    // ts extras
    std::string timescale_json;
    // op extras
    std::string apply;      // Ialpha | Dalpha | Calpha
    std::string input_csv;
    // numerics
    std::size_t grid_n = 1024;
    std::optional<double> grid_gamma;  // defaults to max(1, 1/(2 alpha))
    double tol = 1e-8;
    int max_iter = 200;
    OutPaths out;
};

/// Grading exponent actually used: the configured one, or max(1, 1/(2 alpha)).
double effective_gamma(const RunConfig& config);

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// Normalized form with every default materialized; reparsing it yields an
/// equivalent config.
nlohmann::json dump_config(const RunConfig& config);

}  // namespace fracsolve::cli
