#include "config.hpp"

#include <algorithm>
#include <fstream>

#include "fracsolve/errors.hpp"
#include "fracsolve/time_scale.hpp"

namespace fracsolve::cli {

Kind kind_from_string(const std::string& name) {
    if (name == "rl") return Kind::rl;
    if (name == "caputo") return Kind::caputo;
    if (name == "ts") return Kind::ts;
    if (name == "abel1") return Kind::abel1;
    if (name == "abel2") return Kind::abel2;
    if (name == "op") return Kind::op;
    throw validation_error("unknown problem kind '" + name + "'");
}

std::string to_string(Kind kind) {
    switch (kind) {
        case Kind::rl: return "rl";
        case Kind::caputo: return "caputo";
        case Kind::ts: return "ts";
        case Kind::abel1: return "abel1";
        case Kind::abel2: return "abel2";
        case Kind::op: return "op";
    }
    return "?";
}

double effective_gamma(const RunConfig& config) {
    if (config.grid_gamma) {
        return *config.grid_gamma;
    }
    return std::max(1.0, 1.0 / (2.0 * config.alpha));
}

namespace {

template <typename T>
T field(const nlohmann::json& j, const char* key, T fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw validation_error(std::string("config field '") + key + "' has the wrong type");
    }
}

template <typename T>
T required(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) {
        throw validation_error(std::string("config field '") + key + "' is required");
    }
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw validation_error(std::string("config field '") + key + "' has the wrong type");
    }
}

}  // namespace

RunConfig parse_config(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw validation_error("config must be a JSON object");
    }
    RunConfig c;
    c.kind = kind_from_string(required<std::string>(j, "kind"));
    c.alpha = required<double>(j, "alpha");
    c.lambda = field<double>(j, "lambda", 0.0);
    c.T = field<double>(j, "T", 1.0);
    c.N = field<double>(j, "N", 1.0);
    c.f_src = field<std::string>(j, "f", c.kind == Kind::op ? "" : "1");
    c.h_src = field<std::string>(j, "h", "0");
    c.kernel_src = field<std::string>(j, "kernel", "");
    c.c1 = field<double>(j, "c1", 1.0);
    c.c2 = field<double>(j, "c2", 1.0);
    c.Lf = field<double>(j, "Lf", 0.0);
    c.u0 = field<double>(j, "u0", 0.0);
    c.b = field<double>(j, "b", 1.0);
    c.M = field<double>(j, "M", 1.0);
    c.omega = field<double>(j, "omega", 2.0);

    if (j.contains("timescale")) {
        if (!j.at("timescale").is_array()) {
            throw validation_error("config field 'timescale' must be an array of pairs");
        }
        c.timescale_json = j.at("timescale").dump();
    }
    c.apply = field<std::string>(j, "apply", "");
    c.input_csv = field<std::string>(j, "in", "");

    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        if (!g.is_object()) {
            throw validation_error("config field 'grid' must be an object");
        }
        const auto n = field<long long>(g, "n", static_cast<long long>(c.grid_n));
        if (n < 2) {
            throw validation_error("config field 'grid.n' must be at least 2");
        }
        c.grid_n = static_cast<std::size_t>(n);
        if (g.contains("gamma")) {
            c.grid_gamma = required<double>(g, "gamma");
        }
    }
    c.tol = field<double>(j, "tol", 1e-8);
    if (!(c.tol > 0.0)) {
        throw validation_error("config field 'tol' must be positive");
    }
    c.max_iter = field<int>(j, "max_iter", 200);
    if (c.max_iter < 1) {
        throw validation_error("config field 'max_iter' must be at least 1");
    }
    if (j.contains("out")) {
        const auto& o = j.at("out");
        if (!o.is_object()) {
            throw validation_error("config field 'out' must be an object");
        }
        c.out.csv = field<std::string>(o, "csv", "");
        c.out.report = field<std::string>(o, "report", "");
    }

    switch (c.kind) {
        case Kind::rl:
            if (!j.contains("lambda")) throw validation_error("kind 'rl' requires 'lambda'");
            break;
        case Kind::caputo:
            if (!j.contains("lambda")) throw validation_error("kind 'caputo' requires 'lambda'");
            if (!j.contains("u0")) throw validation_error("kind 'caputo' requires 'u0'");
            break;
        case Kind::ts: {
            if (!j.contains("lambda")) throw validation_error("kind 'ts' requires 'lambda'");
            if (c.timescale_json.empty()) throw validation_error("kind 'ts' requires 'timescale'");
            const TimeScale scale = TimeScale::from_json(c.timescale_json);
            if (j.contains("T") && c.T != scale.max()) {
                throw validation_error("kind 'ts': 'T' must equal the maximum of the scale");
            }
            c.T = scale.max();
            break;
        }
        case Kind::abel1:
            if (!j.contains("f")) throw validation_error("kind 'abel1' requires 'f'");
            break;
        case Kind::abel2:
            if (!j.contains("f")) throw validation_error("kind 'abel2' requires 'f'");
            if (c.kernel_src.empty()) throw validation_error("kind 'abel2' requires 'kernel'");
            break;
        case Kind::op:
            if (c.apply.empty()) throw validation_error("kind 'op' requires 'apply'");
            if (c.input_csv.empty()) throw validation_error("kind 'op' requires 'in'");
            break;
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw validation_error("cannot open config file '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw validation_error("config '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_config(j);
}

nlohmann::json dump_config(const RunConfig& c) {
    nlohmann::json j;
    j["kind"] = to_string(c.kind);
    j["alpha"] = c.alpha;
    j["lambda"] = c.lambda;
    j["T"] = c.T;
    j["N"] = c.N;
    if (c.kind != Kind::op) {
        j["f"] = c.f_src;
        j["h"] = c.h_src;
    }
    if (!c.kernel_src.empty()) {
        j["kernel"] = c.kernel_src;
    }
    j["c1"] = c.c1;
    j["c2"] = c.c2;
    j["Lf"] = c.Lf;
    if (c.kind == Kind::caputo) {
        j["u0"] = c.u0;
        j["b"] = c.b;
        j["M"] = c.M;
        j["omega"] = c.omega;
    }
    if (!c.timescale_json.empty()) {
        j["timescale"] = nlohmann::json::parse(c.timescale_json);
    }
    if (c.kind == Kind::op) {
        j["apply"] = c.apply;
        j["in"] = c.input_csv;
    }
    j["grid"] = {{"n", c.grid_n}, {"gamma", effective_gamma(c)}};
    j["tol"] = c.tol;
    j["max_iter"] = c.max_iter;
    j["out"] = {{"csv", c.out.csv}, {"report", c.out.report}};
    return j;
}

}  // namespace fracsolve::cli
