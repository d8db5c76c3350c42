#include "fbc/gallager.hpp"

#include <cmath>

#include "fbc/errors.hpp"
#include "fbc/normal.hpp"

namespace fbc {

double psi(const DiscreteChannel& w, const ProbabilityVector& p, double s) {
  if (p.size() != w.input_size()) throw dimension_mismatch("input law does not match channel");
  if (!(s >= 0.0 && s <= 1.0)) throw domain_error("s must lie in [0,1]");
  if (s == 0.0) return 0.0;
  const double alpha = 1.0 / (1.0 + s);
  double total = 0.0;
  for (std::size_t y = 0; y < w.output_size(); ++y) {
    double inner = 0.0;
    for (std::size_t x = 0; x < w.input_size(); ++x) {
      double v = w(x, y);
      if (v > 0.0) inner += p[x] * std::pow(v, alpha);
    }
    if (inner > 0.0) total += std::pow(inner, 1.0 + s);
  }
  if (!(total > 0.0)) throw nonconvergence("psi sum vanished");
  return std::log(total);
}

std::pair<double, double> psi_derivatives(const DiscreteChannel& w, const ProbabilityVector& p) {
  // Forward stencils since psi is only defined for s >= 0; psi(0) = 0.
  const double h = 1e-4;
  double f1 = psi(w, p, h);
  double f2 = psi(w, p, 2.0 * h);
  double f3 = psi(w, p, 3.0 * h);
  double d1 = (4.0 * f1 - f2) / (2.0 * h);
  double d2 = (-5.0 * f1 + 4.0 * f2 - f3) / (h * h);
  return {d1, d2};
}

namespace {

// Golden-section on [0,1] for convex f, then compare against the exact
// boundary values so boundary minimizers come out exact.
template <class F>
GallagerMinimum golden_minimize(F&& f, double tol) {
  const double invphi = 0.6180339887498949;
  double a = 0.0, b = 1.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  int iter = 0;
  while (b - a > tol) {
    if (++iter > 400) throw nonconvergence("golden-section failed to shrink the bracket");
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  GallagerMinimum out;
  out.s_star = 0.5 * (a + b);
  out.exponent = f(out.s_star);
  double f0 = f(0.0);
  if (f0 <= out.exponent) {
    out.s_star = 0.0;
    out.exponent = f0;
  }
  double f1 = f(1.0);
  if (f1 < out.exponent) {
    out.s_star = 1.0;
    out.exponent = f1;
  }
  return out;
}

}  // namespace

GallagerMinimum gallager_minimize(const DiscreteChannel& w, const ProbabilityVector& p, double r,
                                  double tol) {
  if (!(r > 0.0)) throw domain_error("rate must be positive");
  if (tol < 1e-14) throw nonconvergence("bracket tolerance below achievable resolution");
  return golden_minimize([&](double s) { return r * s + psi(w, p, s); }, tol);
}

std::vector<GallagerLimitPoint> second_order_gallager_limit(const DiscreteChannel& w,
                                                            const ProbabilityVector& p, double r2,
                                                            const std::vector<long long>& n_grid) {
  // Negative zero is the degenerate boundary case and passes through; any
  // nonnegative rate is rejected.
  if (!(r2 <= 0.0) || (r2 == 0.0 && !std::signbit(r2)))
    throw domain_error("second-order rate must be negative");
  const double c = mutual_information(w, p);
  auto dpsi = [&](double s) {
    const double h = 1e-6;
    if (s < h) return (psi(w, p, s + h) - psi(w, p, s)) / h;
    if (s > 1.0 - h) return (psi(w, p, s) - psi(w, p, s - h)) / h;
    return (psi(w, p, s + h) - psi(w, p, s - h)) / (2.0 * h);
  };
  std::vector<GallagerLimitPoint> out;
  out.reserve(n_grid.size());
  for (long long n : n_grid) {
    if (n < 1) throw validation_error("block lengths must be positive");
    if (r2 == 0.0) {
      // objective C s + psi(s) has its exact minimum 0 at s = 0
      out.push_back({n, 0.0, 0.0, 0.0});
      continue;
    }
    const double rn = c + r2 / std::sqrt(static_cast<double>(n));
    GallagerMinimum m = golden_minimize([&](double s) { return rn * s + psi(w, p, s); }, 1e-12);
    GallagerLimitPoint pt;
    pt.n = n;
    pt.scaled_min = static_cast<double>(n) * m.exponent;
    // Stationary point: psi'(s) = -rn. psi' is increasing; at s=0 the
    // objective slope is rn - I = r2/sqrt(n) <= 0, so the root sits right of
    // 0 or past 1.
    double lo = 0.0, hi = 1.0;
    if (dpsi(1.0) + rn <= 0.0) {
      pt.s_n = 1.0;
    } else {
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (dpsi(mid) + rn < 0.0)
          lo = mid;
        else
          hi = mid;
      }
      pt.s_n = 0.5 * (lo + hi);
    }
    pt.sqrt_n_s_n = std::sqrt(static_cast<double>(n)) * pt.s_n;
    out.push_back(pt);
  }
  return out;
}

GallagerCurve comparison_curve(double v, double r2_min, double r2_max, int steps) {
  if (!(v > 0.0)) throw validation_error("variance must be positive");
  if (!(r2_min < r2_max)) throw validation_error("grid bounds must be increasing");
  if (steps < 2) throw validation_error("need at least two grid points");
  GallagerCurve curve;
  curve.v = v;
  curve.r2_grid.resize(static_cast<std::size_t>(steps));
  curve.gallager_bound.resize(static_cast<std::size_t>(steps));
  curve.gaussian_value.resize(static_cast<std::size_t>(steps));
  const double sv = std::sqrt(v);
  for (int i = 0; i < steps; ++i) {
    double r2 = r2_min + (r2_max - r2_min) * static_cast<double>(i) / (steps - 1);
    curve.r2_grid[static_cast<std::size_t>(i)] = r2;
    curve.gaussian_value[static_cast<std::size_t>(i)] = normal_cdf(r2 / sv);
    // Above capacity the exponential bound certifies nothing; report 1.
    curve.gallager_bound[static_cast<std::size_t>(i)] =
        r2 > 0.0 ? 1.0 : std::exp(-r2 * r2 / (2.0 * v));
  }
  return curve;
}

}  // namespace fbc
