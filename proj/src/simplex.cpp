#include "simplex.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "fbc/errors.hpp"

namespace fbc {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr std::size_t kMaxPivots = 20000;

// Tableau rows: m constraint rows then one objective row. Columns: variables
// then rhs. Basic columns are kept as unit vectors by the pivoting.
struct Tableau {
  std::size_t m, n;
  std::vector<std::vector<double>> t;  // (m+1) x (n+1)
  std::vector<std::size_t> basis;      // basic variable of each row

  void pivot(std::size_t row, std::size_t col) {
    double piv = t[row][col];
    for (double& v : t[row]) v /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == row) continue;
      double f = t[i][col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n; ++j) t[i][j] -= f * t[row][j];
    }
    basis[row] = col;
  }

  // Bland's rule: entering column is the lowest-index negative reduced cost,
  // leaving row breaks ratio ties by the lowest basic variable index.
  bool iterate(std::size_t allowed_cols) {
    std::size_t pivots = 0;
    for (;;) {
      std::size_t enter = n;
      for (std::size_t j = 0; j < allowed_cols; ++j) {
        if (t[m][j] < -kPivotTol) { enter = j; break; }
      }
      if (enter == n) return true;
      std::size_t leave = m;
      double best_ratio = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        if (t[i][enter] > kPivotTol) {
          double ratio = t[i][n] / t[i][enter];
          if (leave == m || ratio < best_ratio - 1e-12 ||
              (ratio < best_ratio + 1e-12 && basis[i] < basis[leave])) {
            leave = i;
            best_ratio = ratio;
          }
        }
      }
      if (leave == m) return false;  // unbounded direction
      pivot(leave, enter);
      if (++pivots > kMaxPivots) {
        throw nonconvergence("simplex: pivot budget exhausted");
      }
    }
  }
};

}  // namespace

LpResult simplex_solve(const std::vector<std::vector<double>>& a,
                       const std::vector<double>& b,
                       const std::vector<double>& c) {
  std::size_t m = a.size(), n = c.size();
  Tableau tb;
  tb.m = m;
  tb.n = n + m;  // phase-1 artificials occupy columns n..n+m-1
  tb.t.assign(m + 1, std::vector<double>(tb.n + 1, 0.0));
  tb.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    double sign = b[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) tb.t[i][j] = sign * a[i][j];
    tb.t[i][n + i] = 1.0;
    tb.t[i][tb.n] = sign * b[i];
    tb.basis[i] = n + i;
  }
  // Phase-1 objective: sum of artificials, expressed over the current basis.
  for (std::size_t j = 0; j <= tb.n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += tb.t[i][j];
    tb.t[m][j] = (j >= n && j < tb.n ? 1.0 : 0.0) - s;
  }
  if (!tb.iterate(tb.n)) {
    throw nonconvergence("simplex: phase 1 reported an unbounded direction");
  }
  if (tb.t[m][tb.n] < -1e-7) {
    throw empty_polytope("simplex: constraints are infeasible (phase-1 value " +
                         std::to_string(-tb.t[m][tb.n]) + ")");
  }
  // Kick remaining artificials out of the basis; a row with no real pivot is
  // a redundant constraint and can keep its zero-valued artificial.
  for (std::size_t i = 0; i < m; ++i) {
    if (tb.basis[i] < n) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::fabs(tb.t[i][j]) > kPivotTol) {
        tb.pivot(i, j);
        break;
      }
    }
  }
  // Phase-2 objective row: c over nonbasic columns, adjusted for the basis.
  for (std::size_t j = 0; j <= tb.n; ++j) tb.t[m][j] = 0.0;
  for (std::size_t j = 0; j < n; ++j) tb.t[m][j] = c[j];
  for (std::size_t i = 0; i < m; ++i) {
    if (tb.basis[i] < n) {
      double f = c[tb.basis[i]];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= tb.n; ++j) tb.t[m][j] -= f * tb.t[i][j];
    }
  }
  if (!tb.iterate(n)) {  // artificial columns are frozen in phase 2
    throw lp_unbounded("simplex: objective unbounded below");
  }
  LpResult res;
  res.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (tb.basis[i] < n) res.x[tb.basis[i]] = tb.t[i][tb.n];
  }
  res.value = 0.0;
  for (std::size_t j = 0; j < n; ++j) res.value += c[j] * res.x[j];
  return res;
}

}  // namespace fbc
