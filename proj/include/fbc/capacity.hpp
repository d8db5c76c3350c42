#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fbc/channel.hpp"

namespace fbc {

struct CapacityReport {
  double capacity = 0.0;          // nats; midpoint of the final duality bracket
  ProbabilityVector q_m;          // capacity-achieving output distribution
  ProbabilityVector achiever;     // the input iterate the solver stopped at
  std::size_t iterations = 0;
  double gap = 0.0;               // final upper-lower bracket width
  double lambda = 0.0;            // cost multiplier; 0 for unconstrained solves
  double expected_cost = 0.0;     // E_P c at the achiever (cost solves only)
  // Nonempty when the budget pinned the solve to a letter subset (degenerate
  // cap K = min cost); only these letters may carry mass.
  std::vector<std::size_t> restricted_support;
};

// The set of capacity-achieving inputs is the polytope
//   { P >= 0 : supp(P) in A, sum_x P(x) W(y|x) = q_m(y), sum_x P(x) = 1 }
// with A the letters whose divergence from q_m is tight, plus an expected
// cost row in constrained problems (equality when the multiplier is active).
struct AchieverPolytope {
  std::vector<std::size_t> support;           // A, ascending
  std::vector<std::vector<double>> eq_lhs;    // rows over the support letters
  std::vector<double> eq_rhs;
  bool has_cost_row = false;
  bool cost_row_is_equality = false;          // true iff the multiplier is active
  std::vector<double> cost_row;               // over support letters
  double cost_cap = 0.0;
  std::size_t full_dim = 0;                   // |X| of the original channel
  std::vector<ProbabilityVector> vertices;    // filled when |A| <= vertex cap

  // Lift a point given on the support letters back to the full alphabet.
  ProbabilityVector lift(const std::vector<double>& on_support) const;
};

inline constexpr double kDefaultSolverTol = 1e-10;
inline constexpr double kDefaultSupportTol = 1e-8;
inline constexpr std::size_t kMaxBlahutIterations = 100000;

// Blahut-Arimoto iteration, stopping when the duality bracket
// max_x D(W_x || W_P) - I(P, W) drops to tol. Throws nonconvergence after
// kMaxBlahutIterations sweeps.
CapacityReport capacity(const DiscreteChannel& w, double tol = kDefaultSolverTol);

// Cost-capped capacity via the Lagrangian update and bisection on the
// multiplier; the reported bracket certifies the constrained value.
CapacityReport capacity_with_cost(const DiscreteChannel& w, const CostFunction& c,
                                  double tol = kDefaultSolverTol);

// Extract the polytope of capacity achievers from a solved report. Letters
// whose (cost-adjusted) divergence lands between C - 10*support_tol and
// C - support_tol cannot be classified and raise support_ambiguity.
// Vertices are enumerated by exhaustive basis search when |A| <= 20.
AchieverPolytope achiever_polytope(const DiscreteChannel& w, const CapacityReport& report,
                                   const std::optional<CostFunction>& c = std::nullopt,
                                   double support_tol = kDefaultSupportTol);

}  // namespace fbc
