#pragma once

#include <vector>

namespace wtfb::detail {

struct LpResult {
    bool feasible = false;
    double objective = 0.0;
    std::vector<double> x;
};

// Dense two-phase simplex for tiny problems:
//   minimize c.x  subject to  A x = b,  x >= 0.
// Bland's rule, so pivoting is deterministic and cannot cycle. Only meant for
// the degradedness feasibility check (tens of rows at most).
LpResult solve_lp(std::vector<std::vector<double>> A, std::vector<double> b,
                  std::vector<double> c);

} // namespace wtfb::detail
