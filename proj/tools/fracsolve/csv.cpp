#include "csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "fracsolve/errors.hpp"

namespace fracsolve::cli {

void write_csv(const std::string& path, const GridFn& fn) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw validation_error("cannot open '" + path + "' for writing");
    }
    out << "t,u\n";
    char line[80];
    for (std::size_t i = 0; i < fn.size(); ++i) {
        std::snprintf(line, sizeof(line), "%.17g,%.17g\n", fn.node(i), fn.value(i));
        out << line;
    }
}

GridFn read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw validation_error("cannot open '" + path + "' for reading");
    }
    std::vector<double> nodes, values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        double t = 0.0, u = 0.0;
        char trailing = 0;
        const int got = std::sscanf(line.c_str(), " %lf , %lf %c", &t, &u, &trailing);
        if (got < 2) {
            if (lineno == 1) {
                continue;  // header
            }
            throw validation_error("'" + path + "' line " + std::to_string(lineno) +
                                   ": expected 't,u'");
        }
        nodes.push_back(t);
        values.push_back(u);
    }
    return GridFn(std::move(nodes), std::move(values));
}

}  // namespace fracsolve::cli
