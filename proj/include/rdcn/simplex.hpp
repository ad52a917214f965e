#pragma once

#include <cstddef>
#include <vector>

namespace rdcn {

// Dense tableau simplex for: maximize c^T x subject to A x <= b, x >= 0,
// with b >= 0 (slack basis is feasible). Bland's rule; small problems only.
struct SimplexResult {
  bool optimal = false;
  double value = 0.0;
  std::vector<double> x;
  std::vector<double> duals;  // one per row, >= 0
};

SimplexResult simplex_maximize(const std::vector<std::vector<double>>& A,
                               const std::vector<double>& b,
                               const std::vector<double>& c,
                               size_t max_pivots = 100000);

}  // namespace rdcn
