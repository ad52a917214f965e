#include "rdcn/assignment.hpp"

#include <cmath>
#include <limits>

namespace rdcn {

namespace {

// Hungarian algorithm with potentials, minimizing cost. Returns column
// assigned to each row.
std::vector<int> min_cost_assignment(const std::vector<double>& cost, int n) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = -1;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost[size_t(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
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
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> assign(n, -1);
  for (int j = 1; j <= n; ++j) assign[p[j] - 1] = j - 1;
  return assign;
}

double assignment_value(const std::vector<double>& w, int n,
                        const std::vector<int>& assign) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += w[size_t(i) * n + assign[i]];
  return s;
}

}  // namespace

std::vector<int> max_weight_assignment(const std::vector<double>& w, int n) {
  std::vector<double> cost(w.size());
  for (size_t k = 0; k < w.size(); ++k) cost[k] = -w[k];
  return min_cost_assignment(cost, n);
}

double matching_weight(const Matching& m, const DemandMatrix& w) {
  double s = 0.0;
  for (Edge e : m.pairs) s += w.at(e.src, e.dst);
  return s;
}

Matching max_weight_matching(const DemandMatrix& w, bool greedy,
                             int lex_limit) {
  int n = w.n;
  if (greedy) {
    std::vector<char> src_used(n, 0), dst_used(n, 0);
    std::vector<Edge> pairs;
    for (int k = 0; k < n; ++k) {
      double best = -1.0;
      Edge pick{-1, -1};
      for (int i = 0; i < n; ++i) {
        if (src_used[i]) continue;
        for (int j = 0; j < n; ++j) {
          if (dst_used[j] || i == j) continue;
          if (w.at(i, j) > best) {
            best = w.at(i, j);
            pick = {i, j};
          }
        }
      }
      if (pick.src < 0) break;
      src_used[pick.src] = dst_used[pick.dst] = 1;
      pairs.push_back(pick);
    }
    return Matching(pairs);
  }

  std::vector<int> assign = max_weight_assignment(w.rates, n);
  double best = assignment_value(w.rates, n, assign);
  double tol = 1e-9 * std::max(1.0, std::abs(best));

  if (n <= lex_limit) {
    // fix rows in order to the smallest destination that keeps the optimum
    std::vector<int> fixed(n, -1);
    std::vector<char> col_used(n, 0);
    double fixed_weight = 0.0;
    for (int i = 0; i < n; ++i) {
      int remaining = n - i - 1;
      for (int j = 0; j < n; ++j) {
        if (col_used[j]) continue;
        double residual = 0.0;
        if (remaining > 0) {
          // reduced problem over rows i+1.. and unused columns except j
          std::vector<int> cols;
          for (int q = 0; q < n; ++q)
            if (!col_used[q] && q != j) cols.push_back(q);
          std::vector<double> sub(size_t(remaining) * remaining);
          for (int r = 0; r < remaining; ++r)
            for (int q = 0; q < remaining; ++q)
              sub[size_t(r) * remaining + q] = w.at(i + 1 + r, cols[q]);
          std::vector<int> sub_assign = max_weight_assignment(sub, remaining);
          residual = assignment_value(sub, remaining, sub_assign);
        }
        if (fixed_weight + w.at(i, j) + residual >= best - tol) {
          fixed[i] = j;
          col_used[j] = 1;
          fixed_weight += w.at(i, j);
          break;
        }
      }
    }
    assign = fixed;
  }

  std::vector<Edge> pairs;
  for (int i = 0; i < n; ++i)
    if (assign[i] >= 0 && assign[i] != i) pairs.push_back({i, assign[i]});
  return Matching(pairs);
}

}  // namespace rdcn
