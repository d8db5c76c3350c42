#pragma once

#include <utility>
#include <vector>

#include "fbc/channel.hpp"

namespace fbc {

// Four-input channel whose rows are joint laws on a pair (A,B) of bits,
// flattened (A,B) -> 2A+B. Rows 1 and 2 share the B marginal q1 but couple
// A and B; rows 3 and 4 are independent with B marginals p1, p2 chosen so
// all four rows sit at the same divergence from the product reference w5
// (A uniform, B ~ Bernoulli(q1)). p1 < q1 < p2 except in the degenerate
// q1 = q2 case where the common level is zero.
struct ExampleInstance {
  double q1 = 0.0;
  double q2 = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  double level = 0.0;  // common divergence, nats
  DiscreteChannel channel{1, 1, {{1.0}}};
  ProbabilityVector w5{std::vector<double>{1.0}};
};

ExampleInstance build_example(double q1, double q2);

// The four divergences D(row_i || w5); all equal level by construction.
std::vector<double> verify_equidistance(const ExampleInstance& inst);

// Conditional dispersion at the two extreme input laws (1/2,1/2,0,0) and
// (0,0,*,*); these are the vertices of the capacity-achieving polytope.
std::pair<double, double> example_v_endpoints(const ExampleInstance& inst);

struct ProjectionTrace {
  std::vector<double> steps;                 // D(Q_k || Q_{k-1}), k = 1..iters
  std::vector<double> pythagorean_residual;  // identity defect per step
  std::vector<double> final_q;               // last iterate, flattened joint
};

// Alternate the two marginal-fixing maps starting from q0 (flattened joint
// law, full support): odd steps fix the A marginal to (1/2,1/2), even steps
// fix the B marginal to (q1, 1-q1). Each step k also checks
// D(w5||Q_{k-1}) = D(w5||Q_k) + D(Q_k||Q_{k-1}).
ProjectionTrace alternating_projection_check(const ExampleInstance& inst,
                                             const std::vector<double>& q0, int iters);

// D(p2_joint||q_joint) - D(p2_joint||p2^A x p2^B), both laws flattened 2x2
// joints. Nonnegative whenever p2_joint is a product law and q_joint shares
// its A marginal.
double independence_gap(const std::vector<double>& p2_joint, const std::vector<double>& q_joint);

struct SweepRow {
  double q1 = 0.0;
  double q2 = 0.0;
  double v_p = 0.0;
  double v_pprime = 0.0;
  double capacity = 0.0;
};

// Instance family along q2 = q1/2; reports both endpoint dispersions and
// the closed-form capacity per grid point.
std::vector<SweepRow> example_sweep(double q1_min, double q1_max, int steps);

}  // namespace fbc
