#pragma once

#include <cstdint>
#include <vector>

#include "fbc/channel.hpp"

namespace fbc {

// Noise process for the additive channel y = x + z (mod d): a stationary
// irreducible Markov chain on {0..d-1} with row-stochastic transition
// Q(next|cur). The stationary law is solved at construction.
class MarkovNoise {
 public:
  MarkovNoise(std::size_t d, std::vector<std::vector<double>> transition);

  std::size_t dim() const { return q_.input_size(); }
  double operator()(std::size_t cur, std::size_t next) const { return q_(cur, next); }
  const ProbabilityVector& stationary() const { return stationary_; }

 private:
  DiscreteChannel q_;
  ProbabilityVector stationary_;
};

// Entropy rate H = sum_x pi(x) H(Q_x), nats per step.
double entropy_rate(const MarkovNoise& noise);

// Asymptotic variance of -(1/sqrt n) ln Q^n truncated at the given lag:
// lag-0 second moment plus twice the lag-1..lag_cutoff covariances of the
// centered step surprisal. The default cutoff of 1 reproduces the two-term
// expression; larger cutoffs converge geometrically to the CLT variance.
double markov_variance(const MarkovNoise& noise, int lag_cutoff = 1);

// Capacity of the additive channel: ln d - H.
double markov_capacity(const MarkovNoise& noise);

// Second-order rate sqrt(V) * G^{-1}(eps). When the variance degenerates
// (V < 1e-14) the rate is reported as signed infinity unless eps = 1/2.
double markov_second_order(const MarkovNoise& noise, double eps, int lag_cutoff = 1);

struct MarkovMcEstimate {
  double estimate = 0.0;   // sample variance of the replica sums, / n
  double std_error = 0.0;  // Gaussian-approximation standard error
  int replicas = 0;
  long long n = 0;
};

// Monte-Carlo estimate of Var(-ln Q^n)/n over independent replica chains
// started from the stationary law. Deterministic in (seed, replica index).
MarkovMcEstimate markov_variance_mc(const MarkovNoise& noise, long long n, int replicas,
                                    std::uint64_t seed);

// psi_{Q,n}(s) = -s ln d + ((1+s)/n) ln sum_{x} Q^n(x)^{1/(1+s)} with the
// uniform-over-states initial convention for Q^n, evaluated by n-1 products
// of the entrywise-powered transition matrix in rescaled (log) form.
double markov_gallager_psi(const MarkovNoise& noise, long long n, double s);

}  // namespace fbc
