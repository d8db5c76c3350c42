#include "fbc/dispersion.hpp"

#include <cmath>
#include <string>

#include "fbc/errors.hpp"
#include "simplex.hpp"

namespace fbc {

namespace {

// Variance of ln(W_x/q) under W_x, centered at the row's own mean.
double row_variance(const std::vector<double>& wx, const std::vector<double>& q) {
  double mean = 0.0;
  for (std::size_t y = 0; y < wx.size(); ++y) {
    if (wx[y] == 0.0) continue;
    if (q[y] == 0.0) {
      throw absolute_continuity_violation(
          "dispersion: channel row has mass outside the reference support");
    }
    mean += wx[y] * std::log(wx[y] / q[y]);
  }
  double var = 0.0;
  for (std::size_t y = 0; y < wx.size(); ++y) {
    if (wx[y] == 0.0) continue;
    double dev = std::log(wx[y] / q[y]) - mean;
    var += wx[y] * dev * dev;
  }
  return var;
}

}  // namespace

double reference_dispersion(const DiscreteChannel& w, const ProbabilityVector& p,
                            const ProbabilityVector& q) {
  if (p.size() != w.input_size()) {
    throw dimension_mismatch("reference_dispersion: input distribution size mismatch");
  }
  if (q.size() != w.output_size()) {
    throw dimension_mismatch("reference_dispersion: reference size mismatch");
  }
  double v = 0.0;
  for (std::size_t x = 0; x < w.input_size(); ++x) {
    if (p[x] == 0.0) continue;
    v += p[x] * row_variance(w.row(x), q.values());
  }
  return v;
}

double conditional_dispersion(const DiscreteChannel& w, const ProbabilityVector& p) {
  return reference_dispersion(w, p, output_distribution(w, p));
}

double unconditional_dispersion(const DiscreteChannel& w, const ProbabilityVector& p) {
  if (p.size() != w.input_size()) {
    throw dimension_mismatch("unconditional_dispersion: input distribution size mismatch");
  }
  ProbabilityVector q = output_distribution(w, p);
  double mean = mutual_information(w, p);
  double v = 0.0;
  for (std::size_t x = 0; x < w.input_size(); ++x) {
    if (p[x] == 0.0) continue;
    for (std::size_t y = 0; y < w.output_size(); ++y) {
      double wxy = w(x, y);
      if (wxy == 0.0) continue;
      double dev = std::log(wxy / q[y]) - mean;
      v += p[x] * wxy * dev * dev;
    }
  }
  return v;
}

DispersionReport dispersion_extremes(const DiscreteChannel& w, const AchieverPolytope& poly,
                                     ExtremesMethod method) {
  if (poly.support.empty()) {
    throw empty_polytope("dispersion_extremes: polytope has no support letters");
  }

  // Every member of the polytope produces the same output distribution: the
  // rows sum_x P(x) W(y|x) = q_m(y) are part of its defining system. The
  // dispersion therefore splits as V_{P,W} = sum_x P(x) v(x) with constant
  // per-letter weights v(x) = Var_{W_x}[ln(W_x/q_m)], i.e. a linear
  // functional of P, and its extremes over the polytope are LP solutions
  // attained at vertices. (In cost problems the per-row means differ by
  // lambda*c(x) across the support, which is why v(x) is centered at each
  // row's own mean rather than at the capacity.)
  std::vector<double> q_m(poly.eq_rhs.begin(), poly.eq_rhs.begin() + w.output_size());
  std::vector<double> objective(poly.support.size());
  for (std::size_t i = 0; i < poly.support.size(); ++i) {
    objective[i] = row_variance(w.row(poly.support[i]), q_m);
  }

  DispersionReport rep;
  bool use_vertices = !poly.vertices.empty() && method != ExtremesMethod::simplex;
  if (method == ExtremesMethod::vertices && poly.vertices.empty()) {
    throw empty_polytope("dispersion_extremes: vertex list unavailable for this polytope");
  }

  if (use_vertices) {
    double best_hi = -HUGE_VAL, best_lo = HUGE_VAL;
    for (const ProbabilityVector& vert : poly.vertices) {
      double val = 0.0;
      for (std::size_t i = 0; i < poly.support.size(); ++i) {
        val += vert[poly.support[i]] * objective[i];
      }
      if (val > best_hi) { best_hi = val; rep.p_plus = vert; }
      if (val < best_lo) { best_lo = val; rep.p_minus = vert; }
    }
    rep.v_plus = best_hi;
    rep.v_minus = best_lo;
    return rep;
  }

  // Simplex route on the equality form; an inactive cost cap gains a slack
  // column exactly as in the vertex enumeration.
  std::vector<std::vector<double>> a = poly.eq_lhs;
  std::vector<double> b = poly.eq_rhs;
  std::size_t ncols = poly.support.size();
  if (poly.has_cost_row) {
    std::vector<double> row = poly.cost_row;
    if (!poly.cost_row_is_equality) {
      for (auto& r : a) r.push_back(0.0);
      row.push_back(1.0);
      ncols += 1;
    }
    a.push_back(std::move(row));
    b.push_back(poly.cost_cap);
  }
  std::vector<double> c_min(ncols, 0.0), c_max(ncols, 0.0);
  for (std::size_t i = 0; i < poly.support.size(); ++i) {
    c_min[i] = objective[i];
    c_max[i] = -objective[i];
  }
  LpResult lo = simplex_solve(a, b, c_min);
  LpResult hi = simplex_solve(a, b, c_max);
  lo.x.resize(poly.support.size());
  hi.x.resize(poly.support.size());
  rep.v_minus = lo.value;
  rep.v_plus = -hi.value;
  rep.p_minus = poly.lift(lo.x);
  rep.p_plus = poly.lift(hi.x);
  return rep;
}

}  // namespace fbc
