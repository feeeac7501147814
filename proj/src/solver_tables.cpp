#include "solver_tables.hpp"

namespace oranopt::solvers::detail {

CellTables build_cell_tables(const model::Scenario& s, double alpha) {
  CellTables tb;
  tb.n_ues = s.n_ues();
  tb.n_orus = s.n_orus();
  tb.horizon = s.horizon();
  tb.n_options = static_cast<int>(s.catalog().size());
  tb.alpha = alpha;

  const std::size_t size = static_cast<std::size_t>(tb.n_ues) * tb.horizon *
                           tb.n_orus * tb.n_options;
  tb.cell_obj.assign(size, 0.0);
  tb.energy.assign(size, 0.0);
  tb.admissible.assign(size, 0);

  const auto& bounds = s.norm_bounds();
  for (int i = 0; i < tb.n_ues; ++i) {
    for (int t = 0; t < tb.horizon; ++t) {
      const double l_max = bounds.latency_max_s(i, t);
      for (int j = 0; j < tb.n_orus; ++j) {
        for (int g = 0; g < tb.n_options; ++g) {
          const auto& opt = s.catalog()[g];
          const std::size_t k = tb.idx(i, t, j, g);
          const double norm_sec = opt.security_bits / bounds.security_max_bits;
          const double lat = model::total_latency_s(s, i, j, g, t);
          const double norm_lat = l_max > 0.0 ? lat / l_max : 0.0;
          tb.cell_obj[k] = (1.0 - alpha) * (1.0 - norm_sec) + alpha * norm_lat;
          tb.energy[k] = model::step_energy(s, i, j, g, t).total();
          const bool sec_ok =
              opt.security_bits >= s.oru(j).security_requirement_bits;
          const bool cycles_ok = static_cast<double>(opt.enc_cycles_per_block) <=
                                 s.ue(i).compute_budget_cycles;
          tb.admissible[k] = sec_ok && cycles_ok ? 1 : 0;
        }
      }
    }
  }
  return tb;
}

}  // namespace oranopt::solvers::detail
