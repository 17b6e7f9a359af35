#include "sdmt/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sdmt {

namespace {

constexpr double kPivotTol = 1e-9;

// Tableau over columns [structural | slack | artificial | rhs] with one basic
// variable per row.  Bland's rule: entering = lowest-index column with a
// negative reduced cost, leaving = lowest-index basic variable among the
// minimum-ratio rows.
struct Tableau {
  std::vector<std::vector<double>> rows;  // m x (n_total + 1)
  std::vector<double> cost;               // n_total + 1 (reduced costs, -obj)
  std::vector<int> basis;                 // size m
  int n_total = 0;

  void pivot(int pivot_row, int pivot_col) {
    auto& pr = rows[pivot_row];
    const double p = pr[pivot_col];
    for (double& v : pr) v /= p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(i) == pivot_row) continue;
      const double f = rows[i][pivot_col];
      if (f == 0.0) continue;
      for (int j = 0; j <= n_total; ++j) rows[i][j] -= f * pr[j];
    }
    const double f = cost[pivot_col];
    if (f != 0.0) {
      for (int j = 0; j <= n_total; ++j) cost[j] -= f * pr[j];
    }
    basis[pivot_row] = pivot_col;
  }

  // Returns false when unbounded.
  bool iterate(int n_eligible) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < n_eligible; ++j) {
        if (cost[j] < -kPivotTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const double coef = rows[i][enter];
        if (coef > kPivotTol) {
          const double ratio = rows[i][n_total] / coef;
          if (ratio < best_ratio - kPivotTol ||
              (ratio < best_ratio + kPivotTol &&
               (leave < 0 || basis[i] < basis[leave]))) {
            best_ratio = ratio;
            leave = static_cast<int>(i);
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult solve_lp(const std::vector<std::vector<double>>& a,
                  const std::vector<double>& b, const std::vector<double>& c) {
  const int m = static_cast<int>(a.size());
  const int n = static_cast<int>(c.size());
  if (static_cast<int>(b.size()) != m) {
    throw std::invalid_argument("solve_lp: inconsistent row count");
  }
  for (const auto& row : a) {
    if (static_cast<int>(row.size()) != n) {
      throw std::invalid_argument("solve_lp: inconsistent column count");
    }
  }

  // Normalize rows so every rhs is nonnegative, add one slack per row, and
  // one artificial per row whose slack ends up with coefficient -1.
  int n_artificial = 0;
  std::vector<int> artificial_of_row(m, -1);
  for (int i = 0; i < m; ++i) {
    if (b[i] < 0.0) artificial_of_row[i] = n_artificial++;
  }
  Tableau t;
  t.n_total = n + m + n_artificial;
  t.rows.assign(m, std::vector<double>(t.n_total + 1, 0.0));
  t.basis.assign(m, -1);
  for (int i = 0; i < m; ++i) {
    const double sign = b[i] < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) t.rows[i][j] = sign * a[i][j];
    t.rows[i][n + i] = sign;  // slack
    t.rows[i][t.n_total] = sign * b[i];
    if (artificial_of_row[i] >= 0) {
      t.rows[i][n + m + artificial_of_row[i]] = 1.0;
      t.basis[i] = n + m + artificial_of_row[i];
    } else {
      t.basis[i] = n + i;
    }
  }

  LpResult result;
  if (n_artificial > 0) {
    // Phase 1: minimize the artificial sum.
    t.cost.assign(t.n_total + 1, 0.0);
    for (int k = 0; k < n_artificial; ++k) t.cost[n + m + k] = 1.0;
    for (int i = 0; i < m; ++i) {
      if (artificial_of_row[i] >= 0) {
        for (int j = 0; j <= t.n_total; ++j) t.cost[j] -= t.rows[i][j];
      }
    }
    if (!t.iterate(t.n_total)) {
      result.status = LpResult::Status::kUnbounded;  // cannot happen in phase 1
      return result;
    }
    if (-t.cost[t.n_total] > 1e-7) {
      result.status = LpResult::Status::kInfeasible;
      return result;
    }
    // Drive any artificial still in the basis out of it.
    for (int i = 0; i < m; ++i) {
      if (t.basis[i] >= n + m) {
        int enter = -1;
        for (int j = 0; j < n + m; ++j) {
          if (std::abs(t.rows[i][j]) > kPivotTol) {
            enter = j;
            break;
          }
        }
        if (enter >= 0) t.pivot(i, enter);
        // A fully zero row is redundant; its artificial stays basic at zero.
      }
    }
  }

  // Phase 2 over structural + slack columns only.
  t.cost.assign(t.n_total + 1, 0.0);
  for (int j = 0; j < n; ++j) t.cost[j] = c[j];
  for (int i = 0; i < m; ++i) {
    const int var = t.basis[i];
    if (var < n && t.cost[var] != 0.0) {
      const double f = t.cost[var];
      for (int j = 0; j <= t.n_total; ++j) t.cost[j] -= f * t.rows[i][j];
    }
  }
  if (!t.iterate(n + m)) {
    result.status = LpResult::Status::kUnbounded;
    return result;
  }

  result.status = LpResult::Status::kOptimal;
  result.x.assign(n, 0.0);
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < n) result.x[t.basis[i]] = t.rows[i][t.n_total];
  }
  result.objective = 0.0;
  for (int j = 0; j < n; ++j) result.objective += c[j] * result.x[j];
  return result;
}

}  // namespace sdmt
