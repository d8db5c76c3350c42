#include "fbc/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "fbc/errors.hpp"

namespace fbc {

namespace {

// One Blahut-Arimoto sweep for the Lagrangian objective I(P,W) - lambda E_P c.
// Returns the certified bracket for the current iterate: lower = I - lambda Ec,
// upper = max_x (D(W_x||W_P) - lambda c(x)).
struct SweepState {
  std::vector<double> p;
  std::vector<double> q;      // W_P
  std::vector<double> score;  // D(W_x||W_P) - lambda c(x)
  double lower = 0.0, upper = 0.0;
  double info = 0.0, exp_cost = 0.0;
};

void evaluate(const DiscreteChannel& w, const std::vector<double>& lam_cost,
              SweepState& st) {
  std::size_t nx = w.input_size(), ny = w.output_size();
  st.q.assign(ny, 0.0);
  for (std::size_t x = 0; x < nx; ++x) {
    if (st.p[x] == 0.0) continue;
    for (std::size_t y = 0; y < ny; ++y) st.q[y] += st.p[x] * w(x, y);
  }
  st.score.assign(nx, 0.0);
  st.info = 0.0;
  st.exp_cost = 0.0;
  st.upper = -HUGE_VAL;
  for (std::size_t x = 0; x < nx; ++x) {
    double d = 0.0;
    for (std::size_t y = 0; y < ny; ++y) {
      double wxy = w(x, y);
      if (wxy > 0.0) d += wxy * std::log(wxy / st.q[y]);
    }
    st.score[x] = d - lam_cost[x];
    st.upper = std::max(st.upper, st.score[x]);
    if (st.p[x] > 0.0) {
      st.info += st.p[x] * d;
      st.exp_cost += st.p[x] * lam_cost[x];
    }
  }
  st.lower = st.info - st.exp_cost;  // lam_cost already carries the multiplier
}

// Runs the iteration until upper - lower <= tol. The multiplier enters only
// through lam_cost[x] = lambda * c(x).
CapacityReport lagrangian_blahut(const DiscreteChannel& w, const std::vector<double>& lam_cost,
                                 double tol, std::vector<double> p0) {
  SweepState st;
  st.p = std::move(p0);
  std::size_t it = 0;
  for (;; ++it) {
    if (it >= kMaxBlahutIterations) {
      throw nonconvergence("capacity: bracket " + std::to_string(st.upper - st.lower) +
                           " after " + std::to_string(it) + " iterations");
    }
    evaluate(w, lam_cost, st);
    if (st.upper - st.lower <= tol) break;
    // Multiplicative update; subtracting the max score keeps the exponentials
    // bounded without changing the normalized result. A tiny floor stops
    // letters from being absorbed at exactly zero, which would let an output
    // lose all its mass and put infinities into the divergences.
    double norm = 0.0;
    for (std::size_t x = 0; x < w.input_size(); ++x) {
      st.p[x] = std::max(st.p[x] * std::exp(st.score[x] - st.upper), 1e-300);
      norm += st.p[x];
    }
    for (double& v : st.p) v /= norm;
  }
  CapacityReport rep;
  rep.capacity = 0.5 * (st.upper + st.lower);
  rep.gap = st.upper - st.lower;
  rep.iterations = it;
  rep.q_m = ProbabilityVector(st.q);
  rep.achiever = ProbabilityVector(st.p);
  return rep;
}

}  // namespace

CapacityReport capacity(const DiscreteChannel& w, double tol) {
  std::vector<double> zero_cost(w.input_size(), 0.0);
  std::vector<double> uniform(w.input_size(), 1.0 / double(w.input_size()));
  return lagrangian_blahut(w, zero_cost, tol, std::move(uniform));
}

namespace {

// Restricted solve for the degenerate budget K <= min cost: only argmin-cost
// letters are feasible, and on them the problem is unconstrained.
CapacityReport capacity_on_letters(const DiscreteChannel& w,
                                   const std::vector<std::size_t>& letters, double tol) {
  std::vector<std::vector<double>> rows;
  rows.reserve(letters.size());
  for (std::size_t x : letters) rows.push_back(w.row(x));
  DiscreteChannel restricted(letters.size(), w.output_size(), std::move(rows));
  CapacityReport sub = capacity(restricted, tol);
  CapacityReport rep = sub;
  std::vector<double> lifted(w.input_size(), 0.0);
  for (std::size_t i = 0; i < letters.size(); ++i) lifted[letters[i]] = sub.achiever[i];
  rep.achiever = ProbabilityVector(lifted);
  return rep;
}

}  // namespace

CapacityReport capacity_with_cost(const DiscreteChannel& w, const CostFunction& c,
                                  double tol) {
  if (c.size() != w.input_size()) {
    throw dimension_mismatch("capacity_with_cost: cost/channel size mismatch");
  }
  double min_cost = *std::min_element(c.costs().begin(), c.costs().end());
  double cap = c.cap();

  if (cap <= min_cost + 1e-12) {
    // Feasible set collapses onto the cheapest letters; the multiplier would
    // have to diverge, so solve the restricted unconstrained problem instead.
    std::vector<std::size_t> letters;
    for (std::size_t x = 0; x < c.size(); ++x) {
      if (c.cost(x) <= min_cost + 1e-12) letters.push_back(x);
    }
    CapacityReport rep = capacity_on_letters(w, letters, tol);
    rep.lambda = 0.0;
    rep.expected_cost = c.expected_cost(rep.achiever);
    rep.restricted_support = std::move(letters);
    return rep;
  }

  auto solve_at = [&](double lambda, std::vector<double> p0) {
    std::vector<double> lam_cost(c.size());
    for (std::size_t x = 0; x < c.size(); ++x) lam_cost[x] = lambda * c.cost(x);
    // inner solves at tol/4 leave room for the multiplier term in the
    // final certificate gap = inner gap + lambda * (cap - E_P c)
    CapacityReport r = lagrangian_blahut(w, lam_cost, 0.25 * tol, std::move(p0));
    r.lambda = lambda;
    r.expected_cost = c.expected_cost(r.achiever);
    return r;
  };

  std::vector<double> uniform(w.input_size(), 1.0 / double(w.input_size()));
  CapacityReport at_zero = solve_at(0.0, uniform);
  CapacityReport best;
  if (at_zero.expected_cost <= cap) {
    // Budget is slack at the unconstrained optimum.
    best = at_zero;
  } else {
    // E_P c is nonincreasing in lambda; bracket then bisect the multiplier.
    double lo = 0.0, hi = 1.0;
    CapacityReport at_hi = solve_at(hi, at_zero.achiever.values());
    int doublings = 0;
    while (at_hi.expected_cost > cap) {
      lo = hi;
      hi *= 2.0;
      at_hi = solve_at(hi, at_hi.achiever.values());
      if (++doublings > 80) {
        throw nonconvergence("capacity_with_cost: multiplier bracket not found");
      }
    }
    best = at_hi;
    const double cost_tol = std::max(1e-14, 0.5 * tol / std::max(1.0, hi));
    for (int step = 0; step < 200; ++step) {
      if (std::fabs(best.expected_cost - cap) <= cost_tol) break;
      if (hi - lo <= 1e-13 * std::max(1.0, hi)) break;
      double mid = 0.5 * (lo + hi);
      CapacityReport at_mid = solve_at(mid, best.achiever.values());
      if (at_mid.expected_cost > cap) {
        lo = mid;
      } else {
        hi = mid;
        best = at_mid;
      }
    }
  }

  // Certify the constrained value with the final multiplier: for any lambda
  // and output Q, C_{c,K} <= max_x (D(W_x||Q) - lambda c(x)) + lambda K, and
  // the feasible achiever gives the matching lower bound I(P,W).
  std::vector<double> lam_cost(c.size());
  for (std::size_t x = 0; x < c.size(); ++x) lam_cost[x] = best.lambda * c.cost(x);
  SweepState st;
  st.p = best.achiever.values();
  evaluate(w, lam_cost, st);
  double upper = st.upper + best.lambda * cap;
  double lower = st.info;
  CapacityReport rep = best;
  rep.capacity = 0.5 * (upper + lower);
  rep.gap = upper - lower;
  return rep;
}

ProbabilityVector AchieverPolytope::lift(const std::vector<double>& on_support) const {
  if (on_support.size() != support.size()) {
    throw dimension_mismatch("AchieverPolytope::lift: size mismatch");
  }
  std::vector<double> full(full_dim, 0.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    double v = std::max(0.0, on_support[i]);
    full[support[i]] = v;
    sum += v;
  }
  if (sum <= 0.0) throw validation_error("AchieverPolytope::lift: zero mass");
  for (double& v : full) v /= sum;
  return ProbabilityVector(full);
}

namespace {

constexpr std::size_t kVertexEnumerationCap = 20;

// Row echelon pass over [M|b]; returns indices of pivot rows.
std::vector<std::size_t> pivot_rows(std::vector<std::vector<double>> m,
                                    std::vector<double> b) {
  std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<std::size_t> order(rows);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t best = r;
    for (std::size_t i = r; i < rows; ++i) {
      if (std::fabs(m[order[i]][col]) > std::fabs(m[order[best]][col])) best = i;
    }
    if (std::fabs(m[order[best]][col]) < 1e-9) continue;
    std::swap(order[r], order[best]);
    std::size_t pr = order[r];
    for (std::size_t i = r + 1; i < rows; ++i) {
      std::size_t ri = order[i];
      double f = m[ri][col] / m[pr][col];
      if (f == 0.0) continue;
      for (std::size_t j = col; j < cols; ++j) m[ri][j] -= f * m[pr][j];
      b[ri] -= f * b[pr];
    }
    pivots.push_back(pr);
    ++r;
  }
  return pivots;
}

// Solve the square system A x = y by Gaussian elimination; false if singular.
bool solve_square(std::vector<std::vector<double>> a, std::vector<double> y,
                  std::vector<double>& out) {
  std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    for (std::size_t i = col; i < n; ++i) {
      if (std::fabs(a[i][col]) > std::fabs(a[best][col])) best = i;
    }
    if (std::fabs(a[best][col]) < 1e-11) return false;
    std::swap(a[col], a[best]);
    std::swap(y[col], y[best]);
    for (std::size_t i = col + 1; i < n; ++i) {
      double f = a[i][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
      y[i] -= f * y[col];
    }
  }
  out.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = y[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * out[j];
    out[i] = s / a[i][i];
  }
  return true;
}

}  // namespace

AchieverPolytope achiever_polytope(const DiscreteChannel& w, const CapacityReport& report,
                                   const std::optional<CostFunction>& c,
                                   double support_tol) {
  std::size_t nx = w.input_size(), ny = w.output_size();
  if (c && c->size() != nx) {
    throw dimension_mismatch("achiever_polytope: cost/channel size mismatch");
  }

  // Candidate letters; a degenerate budget restricts them a priori because
  // feasibility already forces zero mass elsewhere.
  std::vector<std::size_t> candidates;
  if (report.restricted_support.empty()) {
    candidates.resize(nx);
    std::iota(candidates.begin(), candidates.end(), 0);
  } else {
    candidates = report.restricted_support;
  }

  // Score each candidate; in cost problems the tight level is the maximal
  // cost-adjusted divergence, otherwise the certified capacity itself.
  std::vector<double> score(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    std::size_t x = candidates[i];
    double d = 0.0;
    for (std::size_t y = 0; y < ny; ++y) {
      double wxy = w(x, y);
      if (wxy > 0.0) {
        if (report.q_m[y] == 0.0) {
          throw absolute_continuity_violation(
              "achiever_polytope: channel row escapes the reported output support");
        }
        d += wxy * std::log(wxy / report.q_m[y]);
      }
    }
    score[i] = d - (c ? report.lambda * c->cost(x) : 0.0);
  }
  double ref = c ? *std::max_element(score.begin(), score.end()) : report.capacity;

  AchieverPolytope poly;
  poly.full_dim = nx;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (score[i] >= ref - support_tol) {
      poly.support.push_back(candidates[i]);
    } else if (score[i] > ref - 10.0 * support_tol) {
      throw support_ambiguity("achiever_polytope: letter " + std::to_string(candidates[i]) +
                              " has divergence within the ambiguous band around the "
                              "tight level; tighten the solver tolerance");
    }
  }
  if (poly.support.empty()) {
    throw empty_polytope("achiever_polytope: no tight letters found");
  }

  std::size_t na = poly.support.size();
  for (std::size_t y = 0; y < ny; ++y) {
    std::vector<double> row(na);
    for (std::size_t i = 0; i < na; ++i) row[i] = w(poly.support[i], y);
    poly.eq_lhs.push_back(std::move(row));
    poly.eq_rhs.push_back(report.q_m[y]);
  }
  poly.eq_lhs.push_back(std::vector<double>(na, 1.0));
  poly.eq_rhs.push_back(1.0);
  if (c) {
    poly.has_cost_row = true;
    poly.cost_row_is_equality = report.lambda > 1e-9;
    poly.cost_row.resize(na);
    for (std::size_t i = 0; i < na; ++i) poly.cost_row[i] = c->cost(poly.support[i]);
    poly.cost_cap = c->cap();
  }

  if (na > kVertexEnumerationCap) return poly;

  // Basic-feasible-solution enumeration. An inactive cost cap is carried as
  // an extra slack column so the feasible set stays in equality form.
  std::vector<std::vector<double>> m = poly.eq_lhs;
  std::vector<double> b = poly.eq_rhs;
  bool slack = false;
  if (poly.has_cost_row) {
    double scale = 1.0;
    for (double v : poly.cost_row) scale = std::max(scale, std::fabs(v));
    std::vector<double> row(na);
    for (std::size_t i = 0; i < na; ++i) row[i] = poly.cost_row[i] / scale;
    if (!poly.cost_row_is_equality) {
      slack = true;
      for (auto& r : m) r.push_back(0.0);
      row.push_back(1.0 / scale);
    }
    m.push_back(std::move(row));
    b.push_back(poly.cost_cap / scale);
  }
  std::size_t ncols = na + (slack ? 1 : 0);
  std::vector<std::size_t> rows_used = pivot_rows(m, b);
  std::size_t rank = rows_used.size();
  if (rank == 0 || rank > ncols) return poly;

  std::map<std::vector<long long>, std::vector<double>> found;
  std::vector<std::size_t> comb(rank);
  std::iota(comb.begin(), comb.end(), 0);
  auto advance = [&]() {
    std::size_t i = rank;
    while (i-- > 0) {
      if (comb[i] < ncols - rank + i) {
        ++comb[i];
        for (std::size_t j = i + 1; j < rank; ++j) comb[j] = comb[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  do {
    std::vector<std::vector<double>> sq(rank, std::vector<double>(rank));
    std::vector<double> rhs(rank);
    for (std::size_t i = 0; i < rank; ++i) {
      for (std::size_t j = 0; j < rank; ++j) sq[i][j] = m[rows_used[i]][comb[j]];
      rhs[i] = b[rows_used[i]];
    }
    std::vector<double> sol;
    if (!solve_square(sq, rhs, sol)) continue;
    bool ok = true;
    for (double v : sol) {
      if (v < -1e-9) { ok = false; break; }
    }
    if (!ok) continue;
    std::vector<double> full(ncols, 0.0);
    for (std::size_t j = 0; j < rank; ++j) full[comb[j]] = std::max(0.0, sol[j]);
    for (std::size_t i = 0; i < m.size() && ok; ++i) {
      double lhs = 0.0;
      for (std::size_t j = 0; j < ncols; ++j) lhs += m[i][j] * full[j];
      if (std::fabs(lhs - b[i]) > 1e-7) ok = false;
    }
    if (!ok) continue;
    std::vector<double> point(full.begin(), full.begin() + na);
    std::vector<long long> key(na);
    for (std::size_t i = 0; i < na; ++i) key[i] = llround(point[i] * 1e8);
    found.emplace(std::move(key), std::move(point));
  } while (advance());

  for (auto& [key, point] : found) {
    poly.vertices.push_back(poly.lift(point));
  }
  return poly;
}

}  // namespace fbc
