#pragma once

#include <vector>

namespace rss {

// Dense two-phase primal simplex with Bland's rule for the small direction
// LPs. Standard form: min c'x subject to A x <= b, x >= 0 (rows with
// negative b are handled by phase-1 artificials).
struct LpResult {
    bool optimal = false;
    double objective = 0;
    std::vector<double> x;
};

LpResult solve_lp(const std::vector<std::vector<double>>& a,
                  const std::vector<double>& b, const std::vector<double>& c,
                  double tol = 1e-9);

}  // namespace rss
