#pragma once

#include <string>

#include "fracsolve/grid.hpp"

namespace fracsolve::cli {

/// Writes "t,u" rows at 17 significant digits; byte-identical for identical
/// inputs.
void write_csv(const std::string& path, const GridFn& fn);

/// Reads a two-column CSV (optional header) into a GridFn.
GridFn read_csv(const std::string& path);

}  // namespace fracsolve::cli
