#pragma once

#include <cstdint>
#include <vector>

namespace fbc {

// Power-constrained additive Gaussian channel: y = x + z, z ~ N(0, N),
// input power budget S, capacity-achieving input law N(0, S).
struct GaussianParams {
  double noise_power;
  double signal_power;
  GaussianParams(double noise, double signal);
  double snr() const { return signal_power / noise_power; }
};

// C = (1/2) ln(1 + S/N), nats.
double gaussian_capacity(const GaussianParams& g);

// V = (snr^2 + 2 snr) / (2 (1+snr)^2), always in (0, 1/2).
double gaussian_dispersion(const GaussianParams& g);

// D(W_x || W_{P_M}) = C + (x^2/N - snr) / (2 (1+snr)); affine in x^2,
// equal to C exactly on the shell x^2 = S.
double gaussian_divergence_profile(const GaussianParams& g, double x);

// Conditional variance of the information density given input x:
// (snr^2 + 2 x^2/N) / (2 (1+snr)^2). Averages to V at x^2 = S.
double gaussian_conditional_variance(const GaussianParams& g, double x);

// sqrt(V) * G^{-1}(eps) and G(a / sqrt(V)).
double gaussian_second_order(const GaussianParams& g, double eps);
double gaussian_error(const GaussianParams& g, double a);

// One normalized information-density sum per replica:
// (1/sqrt n) (sum_i ln(W(y_i|x_i)/W_{P_M}(y_i)) - n C), with x ~ N(0,S),
// y = x + N(0,N). Deterministic in (seed, replica index). Per-step variance
// is the unconditional snr/(1+snr), above the shell dispersion V.
std::vector<double> sample_gaussian_density(const GaussianParams& g, long long n, int replicas,
                                            std::uint64_t seed);

}  // namespace fbc
