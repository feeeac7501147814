#pragma once

#include <vector>

#include "oranopt/problem.hpp"
#include "oranopt/system_model.hpp"

namespace oranopt::solvers::detail {

// Per-(ue, step, oru, option) cost tables shared by the solvers. cell_obj is
// the cell's contribution to the weighted objective under per-cell latency
// normalization; energy_j is the device-side energy of the step.
struct CellTables {
  int n_ues = 0;
  int n_orus = 0;
  int horizon = 0;
  int n_options = 0;
  double alpha = 0.0;

  std::vector<double> cell_obj;   // [i][t][j][g]
  std::vector<double> energy;     // [i][t][j][g]
  std::vector<char> admissible;   // [i][t][j][g]: security + cycle budget ok

  std::size_t idx(int i, int t, int j, int g) const {
    return ((static_cast<std::size_t>(i) * horizon + t) * n_orus + j) * n_options + g;
  }
  double obj(int i, int t, int j, int g) const { return cell_obj[idx(i, t, j, g)]; }
  double energy_j(int i, int t, int j, int g) const { return energy[idx(i, t, j, g)]; }
  bool ok(int i, int t, int j, int g) const { return admissible[idx(i, t, j, g)] != 0; }

  // True when some option satisfies both the radio unit's security
  // requirement and the device's cycle budget.
  bool any_option(int i, int t, int j) const {
    for (int g = 0; g < n_options; ++g) {
      if (ok(i, t, j, g)) return true;
    }
    return false;
  }
};

CellTables build_cell_tables(const model::Scenario& s, double alpha);

}  // namespace oranopt::solvers::detail
