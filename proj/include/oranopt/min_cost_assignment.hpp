#pragma once

#include <optional>
#include <vector>

#include "oranopt/grid.hpp"

namespace oranopt {

// Cost marking an edge that must not be used.
inline constexpr double kForbiddenCost = 1e30;

// Exact minimum-cost assignment of every row to a distinct column
// (rows <= cols), by the Hungarian method with potentials. Entries at or
// above kForbiddenCost are treated as missing edges. Returns the matched
// column per row, or nullopt when no complete finite-cost matching exists.
std::optional<std::vector<int>> min_cost_assignment(const Grid2<double>& cost);

}  // namespace oranopt
