#pragma once

#include "fbc/capacity.hpp"
#include "fbc/channel.hpp"

namespace fbc {

struct DispersionReport {
  double v_plus = 0.0;   // nats^2
  double v_minus = 0.0;  // nats^2
  ProbabilityVector p_plus;
  ProbabilityVector p_minus;
};

// Sum_x P(x) Var_{W_x}[ln(W_x/W_P)], variances taken about the per-row means
// D(W_x||W_P).
double conditional_dispersion(const DiscreteChannel& w, const ProbabilityVector& p);

// Same second moment but centered at the global mean I(P,W). Coincides with
// the conditional form whenever the per-row means are constant on supp(P).
double unconditional_dispersion(const DiscreteChannel& w, const ProbabilityVector& p);

// Conditional form against a fixed reference output distribution Q.
double reference_dispersion(const DiscreteChannel& w, const ProbabilityVector& p,
                            const ProbabilityVector& q);

enum class ExtremesMethod { automatic, vertices, simplex };

// Extremal dispersions over the capacity-achieving polytope.
DispersionReport dispersion_extremes(const DiscreteChannel& w, const AchieverPolytope& poly,
                                     ExtremesMethod method = ExtremesMethod::automatic);

}  // namespace fbc
