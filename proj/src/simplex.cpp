#include "rdcn/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rdcn {

SimplexResult simplex_maximize(const std::vector<std::vector<double>>& A,
                               const std::vector<double>& b,
                               const std::vector<double>& c,
                               size_t max_pivots) {
  const size_t m = A.size();
  const size_t n = c.size();
  const double eps = 1e-10;
  for (double bi : b)
    if (bi < -eps) throw std::invalid_argument("simplex: negative rhs");

  // tableau: m rows x (n structural + m slack + rhs), objective row last
  std::vector<std::vector<double>> t(m + 1,
                                     std::vector<double>(n + m + 1, 0.0));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) t[i][j] = A[i][j];
    t[i][n + i] = 1.0;
    t[i][n + m] = b[i];
  }
  for (size_t j = 0; j < n; ++j) t[m][j] = -c[j];
  std::vector<size_t> basis(m);
  for (size_t i = 0; i < m; ++i) basis[i] = n + i;

  for (size_t pivots = 0; pivots < max_pivots; ++pivots) {
    // Bland: smallest index with negative reduced cost
    size_t enter = n + m;
    for (size_t j = 0; j < n + m; ++j)
      if (t[m][j] < -eps) {
        enter = j;
        break;
      }
    if (enter == n + m) {
      SimplexResult r;
      r.optimal = true;
      r.value = t[m][n + m];
      r.x.assign(n, 0.0);
      for (size_t i = 0; i < m; ++i)
        if (basis[i] < n) r.x[basis[i]] = t[i][n + m];
      r.duals.assign(m, 0.0);
      for (size_t i = 0; i < m; ++i)
        r.duals[i] = std::max(t[m][n + i], 0.0);
      return r;
    }
    // ratio test, Bland tie-break on smallest basis index
    size_t leave = m;
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < m; ++i) {
      // pivot-element tolerance well above rounding noise; a near-zero pivot
      // amplifies accumulated error across the whole row
      if (t[i][enter] <= 1e-9) continue;
      // rhs can drift a few ulps negative after degenerate pivots; a negative
      // ratio would walk the basis out of the feasible region
      double ratio = std::max(0.0, t[i][n + m]) / t[i][enter];
      if (ratio < best - eps ||
          (ratio < best + eps && (leave == m || basis[i] < basis[leave]))) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == m)
      throw std::runtime_error("simplex: unbounded problem");
    double piv = t[leave][enter];
    for (size_t j = 0; j <= n + m; ++j) t[leave][j] /= piv;
    for (size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      double f = t[i][enter];
      if (f == 0.0) continue;
      for (size_t j = 0; j <= n + m; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  throw std::runtime_error("simplex: pivot limit exceeded");
}

}  // namespace rdcn
