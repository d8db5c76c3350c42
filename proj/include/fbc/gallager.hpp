#pragma once

#include <utility>
#include <vector>

#include "fbc/channel.hpp"

namespace fbc {

struct GallagerCurve {
  std::vector<double> r2_grid;        // second-order rate, nats * sqrt(n)
  std::vector<double> gallager_bound; // exp(-r2^2/(2v)), or 1 above capacity
  std::vector<double> gaussian_value; // G(r2 / sqrt(v))
  double v = 0.0;
};

struct GallagerMinimum {
  double s_star = 0.0;
  double exponent = 0.0;  // per-letter, nats; 0 means no decay
};

struct GallagerLimitPoint {
  long long n = 0;
  double scaled_min = 0.0;   // n * min_s ((C + r2/sqrt n) s + psi(s))
  double s_n = 0.0;          // stationary point of the same objective
  double sqrt_n_s_n = 0.0;
};

// psi_P(s) = ln sum_y (sum_x P(x) W(y|x)^{1/(1+s)})^{1+s}; psi_P(0) = 0
// exactly (special-cased so rounding in the s=0 sums cannot leak through).
double psi(const DiscreteChannel& w, const ProbabilityVector& p, double s);

// One-sided finite-difference derivatives of psi at s=0 with step 1e-4:
// first ~ -I(P,W), second ~ unconditional dispersion.
std::pair<double, double> psi_derivatives(const DiscreteChannel& w, const ProbabilityVector& p);

// Minimize R s + psi_P(s) over s in [0,1]; f is convex so golden-section
// with boundary candidates is exact up to the bracket width.
GallagerMinimum gallager_minimize(const DiscreteChannel& w, const ProbabilityVector& p, double r,
                                  double tol);

// For each n: scaled minimum of (C + r2/sqrt n)s + psi(s) times n, plus the
// stationary point s_n of the same objective. As n grows the scaled minimum
// approaches -r2^2/(2 V) and sqrt(n) s_n approaches -r2/V.
std::vector<GallagerLimitPoint> second_order_gallager_limit(const DiscreteChannel& w,
                                                            const ProbabilityVector& p, double r2,
                                                            const std::vector<long long>& n_grid);

// Paired Gaussian vs exponential second-order error curves on an r2 grid.
GallagerCurve comparison_curve(double v, double r2_min, double r2_max, int steps);

}  // namespace fbc
