// Copyright 2026 The csense Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "csense/games.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace csense {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

PayoffMatrix::PayoffMatrix(int rows, int cols)
    : rows_(rows), cols_(cols),
      entries_(rows, std::vector<double>(cols, 0.0)) {
  if (rows < 1 || cols < 1) throw ModelError("payoff matrix: empty");
}

PayoffMatrix::PayoffMatrix(std::vector<std::vector<double>> entries)
    : rows_(static_cast<int>(entries.size())),
      cols_(entries.empty() ? 0 : static_cast<int>(entries[0].size())),
      entries_(std::move(entries)) {
  if (rows_ < 1 || cols_ < 1) throw ModelError("payoff matrix: empty");
  for (const auto& row : entries_) {
    if (static_cast<int>(row.size()) != cols_) {
      throw ModelError("payoff matrix: ragged rows");
    }
    for (double v : row) {
      if (!std::isfinite(v)) throw ModelError("payoff matrix: non-finite entry");
    }
  }
}

namespace {

double strategy_value(const PayoffMatrix& a, const std::vector<double>& q) {
  double worst = kInf;
  for (int j = 0; j < a.cols(); ++j) {
    double dot = 0.0;
    for (int u = 0; u < a.rows(); ++u) dot += q[u] * a.at(u, j);
    worst = std::min(worst, dot);
  }
  return worst;
}

// Primal simplex on: maximize sum(y) s.t. A' y <= 1, y >= 0, where A' is the
// payoff matrix shifted entrywise positive. The optimal duals on the row
// constraints, normalized, are the maximin row strategy; the shifted game
// value is 1 / sum(y*).
struct GameLp {
  int k, m;
  std::vector<std::vector<double>> tab;  // k rows x (m + k + 1) columns
  std::vector<double> obj;               // reduced-cost row, m + k + 1 wide
  std::vector<int> basis;

  explicit GameLp(const PayoffMatrix& a, double shift) : k(a.rows()), m(a.cols()) {
    tab.assign(k, std::vector<double>(m + k + 1, 0.0));
    for (int u = 0; u < k; ++u) {
      for (int j = 0; j < m; ++j) tab[u][j] = a.at(u, j) + shift;
      tab[u][m + u] = 1.0;
      tab[u][m + k] = 1.0;
    }
    obj.assign(m + k + 1, 0.0);
    for (int j = 0; j < m; ++j) obj[j] = 1.0;
    basis.resize(k);
    for (int u = 0; u < k; ++u) basis[u] = m + u;
  }

  void pivot(int row, int col) {
    const double piv = tab[row][col];
    for (double& v : tab[row]) v /= piv;
    for (int r = 0; r < k; ++r) {
      if (r == row || tab[r][col] == 0.0) continue;
      const double factor = tab[r][col];
      for (int c = 0; c <= m + k; ++c) tab[r][c] -= factor * tab[row][c];
      tab[r][col] = 0.0;
    }
    if (obj[col] != 0.0) {
      const double factor = obj[col];
      for (int c = 0; c <= m + k; ++c) obj[c] -= factor * tab[row][c];
      obj[col] = 0.0;
    }
    basis[row] = col;
  }

  // Bland's rule; terminates without cycling.
  void solve() {
    constexpr double kTol = 1e-12;
    for (;;) {
      int col = -1;
      for (int c = 0; c < m + k; ++c) {
        if (obj[c] > kTol) { col = c; break; }
      }
      if (col < 0) return;
      int row = -1;
      double best_ratio = kInf;
      for (int r = 0; r < k; ++r) {
        if (tab[r][col] > kTol) {
          const double ratio = tab[r][m + k] / tab[r][col];
          if (ratio < best_ratio - kTol ||
              (ratio < best_ratio + kTol && (row < 0 || basis[r] < basis[row]))) {
            best_ratio = ratio;
            row = r;
          }
        }
      }
      if (row < 0) throw ModelError("solve_maximin: unbounded game LP");
      pivot(row, col);
    }
  }
};

}  // namespace

MaximinSolution solve_maximin(const PayoffMatrix& a) {
  const int k = a.rows(), m = a.cols();
  double lo = kInf;
  for (int u = 0; u < k; ++u) {
    lo = std::min(lo, *std::min_element(a.row(u).begin(), a.row(u).end()));
  }
  const double shift = 1.0 - lo;  // entries >= 1 keep the LP value positive

  GameLp lp(a, shift);
  lp.solve();

  // Row strategy from the duals (reduced costs on the slack columns).
  std::vector<double> q(k);
  double total = 0.0;
  for (int u = 0; u < k; ++u) {
    q[u] = std::max(0.0, -lp.obj[m + u]);
    total += q[u];
  }
  if (total <= 0.0) throw ModelError("solve_maximin: degenerate dual");
  for (double& v : q) v /= total;

  // Column strategy for the matching upper bound.
  std::vector<double> y(m, 0.0);
  double ysum = 0.0;
  for (int r = 0; r < k; ++r) {
    if (lp.basis[r] < m) y[lp.basis[r]] = lp.tab[r][m + k];
  }
  for (double v : y) ysum += v;
  double upper = -kInf;
  for (int u = 0; u < k; ++u) {
    double dot = 0.0;
    for (int j = 0; j < m; ++j) dot += a.at(u, j) * y[j] / ysum;
    upper = std::max(upper, dot);
  }

  MaximinSolution sol;
  sol.q_star.weights = std::move(q);
  sol.value = strategy_value(a, sol.q_star.weights);
  sol.duality_gap = upper - sol.value;
  return sol;
}

namespace {

// Exact lattice maximin. The lattice point is an integer composition
// (n_1, ..., n_k) of N; the objective is min_j sum_u n_u A[u][j] (scaled by
// 1/N at the end). DFS assigns mass row by row; the last two rows are solved
// by exact ternary search on the concave segment value. Pruning is by the
// admissible bound min_j (dots_j + r * suffixmax_j), restricted per node to
// the interval of branch values where the bound can still beat the incumbent.
struct LatticeSearch {
  int k, m, big_n;
  std::vector<std::vector<double>> a;        // row-permuted copy
  std::vector<std::vector<double>> suffmax;  // suffmax[d][j] = max_{u>=d} a[u][j]
  double best = -kInf;

  double value_of(const std::vector<int>& n) const {
    double worst = kInf;
    for (int j = 0; j < m; ++j) {
      double s = 0.0;
      for (int u = 0; u < k; ++u) s += n[u] * a[u][j];
      worst = std::min(worst, s);
    }
    return worst;
  }

  double segment_at(const std::vector<double>& dots, const double* ra,
                    const double* rb, int r, int t) const {
    double worst = kInf;
    for (int j = 0; j < m; ++j) {
      worst = std::min(worst, dots[j] + t * ra[j] + (r - t) * rb[j]);
    }
    return worst;
  }

  // Max over integer t in [0, r] of the concave piecewise-linear segment
  // value; exact including plateaus (equal probes bracket the maximum).
  void search_segment(const std::vector<double>& dots, int r) {
    const double* ra = a[k - 2].data();
    const double* rb = a[k - 1].data();
    int lo = 0, hi = r;
    while (hi - lo > 2) {
      const int m1 = lo + (hi - lo) / 3;
      const int m2 = hi - (hi - lo) / 3;
      const double f1 = segment_at(dots, ra, rb, r, m1);
      const double f2 = segment_at(dots, ra, rb, r, m2);
      if (f1 < f2) {
        lo = m1 + 1;
      } else if (f1 > f2) {
        hi = m2 - 1;
      } else {
        lo = m1;
        hi = m2;
      }
    }
    for (int t = lo; t <= hi; ++t) {
      best = std::max(best, segment_at(dots, ra, rb, r, t));
    }
  }

  void dfs(int depth, int r, const std::vector<double>& dots) {
    if (depth == k - 2) {
      search_segment(dots, r);
      return;
    }
    const double* ra = a[depth].data();
    const double* sm = suffmax[depth + 1].data();
    // Branch values t where min_j (dots_j + t ra_j + (r-t) sm_j) > best form
    // an interval because the bound is concave in t.
    double tlo = 0.0, thi = static_cast<double>(r);
    for (int j = 0; j < m; ++j) {
      const double slope = ra[j] - sm[j];
      const double rhs = best - dots[j] - r * sm[j];
      if (slope > 0.0) {
        tlo = std::max(tlo, rhs / slope);
      } else if (slope < 0.0) {
        thi = std::min(thi, rhs / slope);
      } else if (rhs >= 0.0) {
        return;  // this column's bound never exceeds the incumbent
      }
    }
    const int ilo = std::max(0, static_cast<int>(std::ceil(tlo - 1e-9)));
    const int ihi = std::min(r, static_cast<int>(std::floor(thi + 1e-9)));
    std::vector<double> child(m);
    for (int t = ihi; t >= ilo; --t) {
      for (int j = 0; j < m; ++j) child[j] = dots[j] + t * ra[j];
      dfs(depth + 1, r - t, child);
    }
  }

  // Incumbent: pure rows, a coarse sub-lattice, then greedy unit transfers.
  std::vector<int> seed() {
    std::vector<int> best_n(k, 0), cur(k, 0);
    double best_v = -kInf;
    auto consider = [&](const std::vector<int>& n) {
      const double v = value_of(n);
      if (v > best_v) {
        best_v = v;
        best_n = n;
      }
    };
    for (int u = 0; u < k; ++u) {
      std::fill(cur.begin(), cur.end(), 0);
      cur[u] = big_n;
      consider(cur);
    }
    int coarse = std::min(big_n, 20);
    while (coarse > 2 && std::pow(coarse + 1.0, k - 1) > 2e6) --coarse;
    const int scale = big_n / coarse;
    const int rem = big_n - scale * coarse;
    std::vector<int> comp(k, 0);
    const auto enumerate = [&](auto&& self, int depth, int left) -> void {
      if (depth == k - 1) {
        comp[depth] = left;
        for (int u = 0; u < k; ++u) cur[u] = comp[u] * scale;
        cur[0] += rem;
        consider(cur);
        return;
      }
      for (int t = 0; t <= left; ++t) {
        comp[depth] = t;
        self(self, depth + 1, left - t);
      }
    };
    if (k > 1 && scale >= 1) enumerate(enumerate, 0, coarse);
    for (int step = std::max(1, big_n / 8); step >= 1; step /= 2) {
      bool improved = true;
      while (improved) {
        improved = false;
        for (int from = 0; from < k; ++from) {
          for (int to = 0; to < k; ++to) {
            if (from == to || best_n[from] < step) continue;
            best_n[from] -= step;
            best_n[to] += step;
            const double v = value_of(best_n);
            if (v > best_v) {
              best_v = v;
              improved = true;
            } else {
              best_n[from] += step;
              best_n[to] -= step;
            }
          }
        }
      }
    }
    best = best_v;
    return best_n;
  }

  double run(const PayoffMatrix& matrix, int lattice_n) {
    k = matrix.rows();
    m = matrix.cols();
    big_n = lattice_n;
    a.resize(k);
    for (int u = 0; u < k; ++u) a[u] = matrix.row(u);
    if (k == 1) {
      return *std::min_element(a[0].begin(), a[0].end());
    }
    const std::vector<int> seed_n = seed();
    // Heaviest seed rows first so the DFS reaches good regions early.
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return seed_n[x] > seed_n[y]; });
    std::vector<std::vector<double>> permuted(k);
    for (int u = 0; u < k; ++u) permuted[u] = a[order[u]];
    a = std::move(permuted);
    suffmax.assign(k, std::vector<double>(m));
    suffmax[k - 1] = a[k - 1];
    for (int u = k - 2; u >= 0; --u) {
      for (int j = 0; j < m; ++j) {
        suffmax[u][j] = std::max(a[u][j], suffmax[u + 1][j]);
      }
    }
    if (k == 2) {
      search_segment(std::vector<double>(m, 0.0), big_n);
    } else {
      dfs(0, big_n, std::vector<double>(m, 0.0));
    }
    return best / big_n;
  }
};

}  // namespace

double brute_force_maximin(const PayoffMatrix& a, double resolution) {
  if (!(resolution > 0.0 && resolution <= 1.0)) {
    throw ModelError("brute_force_maximin: resolution must lie in (0, 1]");
  }
  const int lattice_n =
      std::max(1, static_cast<int>(std::llround(1.0 / resolution)));
  LatticeSearch search;
  return search.run(a, lattice_n);
}

}  // namespace csense
