#include "setnorm/lp.hpp"

#include <stdexcept>

namespace setnorm {

PackingLpResult solve_packing_lp(const std::vector<std::vector<Rat>>& rows,
                                 std::size_t num_vars) {
  std::size_t m = rows.size(), n = num_vars;
  for (const auto& r : rows)
    if (r.size() != n) throw std::invalid_argument("packing lp: ragged row");

  // Tableau: m rows, columns = n structural + m slack + rhs.
  // Objective row maximizes sum of structural variables.
  std::size_t cols = n + m + 1;
  std::vector<std::vector<Rat>> t(m + 1, std::vector<Rat>(cols, Rat(0)));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = rows[i][j];
    t[i][n + i] = 1;
    t[i][cols - 1] = 1;
  }
  for (std::size_t j = 0; j < n; ++j) t[m][j] = -1;  // max sum z

  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  while (true) {
    // Bland: entering = lowest-index column with negative reduced cost.
    std::size_t enter = cols - 1;
    for (std::size_t j = 0; j + 1 < cols; ++j)
      if (t[m][j] < 0) {
        enter = j;
        break;
      }
    if (enter == cols - 1) break;  // optimal

    // Ratio test, Bland tie-break on basis index.
    std::size_t leave = m;
    Rat best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rat ratio = t[i][cols - 1] / t[i][enter];
      if (leave == m || ratio < best ||
          (ratio == best && basis[i] < basis[leave]))
        leave = i, best = ratio;
    }
    if (leave == m)
      throw std::runtime_error("packing lp: unbounded (no positive pivot)");

    // Pivot.
    Rat piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      if (t[i][enter] == 0) continue;
      Rat f = t[i][enter];
      for (std::size_t j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  PackingLpResult res;
  res.value = t[m][cols - 1];
  res.primal.assign(n, Rat(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) res.primal[basis[i]] = t[i][cols - 1];
  res.dual.assign(m, Rat(0));
  for (std::size_t i = 0; i < m; ++i) res.dual[i] = t[m][n + i];
  return res;
}

}  // namespace setnorm
