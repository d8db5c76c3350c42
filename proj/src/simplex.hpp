#pragma once

#include <vector>

namespace fbc {

struct LpResult {
  std::vector<double> x;
  double value = 0.0;
};

// Minimizes c.x subject to A x = b, x >= 0 (dense two-phase tableau simplex,
// Bland's rule). Throws empty_polytope when infeasible, lp_unbounded when the
// objective is unbounded below, nonconvergence on an iteration blowout.
LpResult simplex_solve(const std::vector<std::vector<double>>& a,
                       const std::vector<double>& b,
                       const std::vector<double>& c);

}  // namespace fbc
