#pragma once

#include <vector>

#include "setnorm/rational.hpp"

namespace setnorm {

/// Exact-rational solver for the packing LP
///     max  sum z_i   s.t.  A z <= 1,  z >= 0
/// with a 0/1 (or nonnegative rational) constraint matrix. Dense tableau
/// simplex with Bland's rule; the all-slack basis is feasible, so no phase 1.
/// Returns the optimum, a primal solution and the dual row prices
/// (an optimal solution of  min sum w_j  s.t.  A^T w >= 1,  w >= 0).
struct PackingLpResult {
  Rat value;                // max sum z
  std::vector<Rat> primal;  // z
  std::vector<Rat> dual;    // w, one per constraint row
};

PackingLpResult solve_packing_lp(const std::vector<std::vector<Rat>>& rows,
                                 std::size_t num_vars);

}  // namespace setnorm
