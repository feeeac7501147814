#include "oranopt/min_cost_assignment.hpp"

#include <limits>
#include <stdexcept>

namespace oranopt {

std::optional<std::vector<int>> min_cost_assignment(const Grid2<double>& cost) {
  const int n = cost.rows();
  const int m = cost.cols();
  if (n == 0) return std::vector<int>{};
  if (n > m) return std::nullopt;

  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based potentials; p[j] = row currently matched to column j.
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<int> p(m + 1, 0), way(m + 1, 0);

  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(m + 1, kInf);
    std::vector<bool> used(m + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      int j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double edge = cost(i0 - 1, j - 1);
        const double cur =
            (edge >= kForbiddenCost ? kInf : edge - u[i0] - v[j]);
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (j1 == -1 || !(delta < kInf)) {
        return std::nullopt;  // no finite augmenting path
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= m; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  }
  for (int i = 0; i < n; ++i) {
    if (row_to_col[i] < 0) return std::nullopt;
  }
  return row_to_col;
}

}  // namespace oranopt
