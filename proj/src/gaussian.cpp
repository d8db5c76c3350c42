#include "fbc/gaussian.hpp"

#include <cmath>

#include "fbc/errors.hpp"
#include "fbc/normal.hpp"
#include "rng.hpp"

namespace fbc {

GaussianParams::GaussianParams(double noise, double signal)
    : noise_power(noise), signal_power(signal) {
  if (!(noise > 0.0) || !std::isfinite(noise))
    throw validation_error("noise power must be positive and finite");
  if (!(signal > 0.0) || !std::isfinite(signal))
    throw validation_error("signal power must be positive and finite");
}

double gaussian_capacity(const GaussianParams& g) { return 0.5 * std::log1p(g.snr()); }

double gaussian_dispersion(const GaussianParams& g) {
  double r = g.snr();
  return (r * r + 2.0 * r) / (2.0 * (1.0 + r) * (1.0 + r));
}

double gaussian_divergence_profile(const GaussianParams& g, double x) {
  double r = g.snr();
  return gaussian_capacity(g) + (x * x / g.noise_power - r) / (2.0 * (1.0 + r));
}

double gaussian_conditional_variance(const GaussianParams& g, double x) {
  double r = g.snr();
  return (r * r + 2.0 * x * x / g.noise_power) / (2.0 * (1.0 + r) * (1.0 + r));
}

double gaussian_second_order(const GaussianParams& g, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw domain_error("eps must lie in (0,1)");
  return std::sqrt(gaussian_dispersion(g)) * normal_quantile(eps);
}

double gaussian_error(const GaussianParams& g, double a) {
  if (!std::isfinite(a)) throw domain_error("threshold must be finite");
  return normal_cdf(a / std::sqrt(gaussian_dispersion(g)));
}

namespace {

// Box-Muller pair from one stream.
inline void normal_pair(std::uint64_t& eng, double& z1, double& z2) {
  double u1 = uniform_open(eng);
  double u2 = uniform01(eng);
  double rad = std::sqrt(-2.0 * std::log(u1));
  double ang = 2.0 * M_PI * u2;
  z1 = rad * std::cos(ang);
  z2 = rad * std::sin(ang);
}

}  // namespace

std::vector<double> sample_gaussian_density(const GaussianParams& g, long long n, int replicas,
                                            std::uint64_t seed) {
  if (n < 1) throw validation_error("block length must be positive");
  if (replicas < 1) throw validation_error("replica count must be positive");
  const double sn = std::sqrt(g.noise_power);
  const double ss = std::sqrt(g.signal_power);
  const double inv2n = 1.0 / (2.0 * g.noise_power);
  const double inv2t = 1.0 / (2.0 * (g.signal_power + g.noise_power));
  std::vector<double> out(static_cast<std::size_t>(replicas));
  for (int r = 0; r < replicas; ++r) {
    std::uint64_t eng = replica_stream(seed, static_cast<std::uint64_t>(r));
    double total = 0.0;
    for (long long i = 0; i < n; ++i) {
      double z1, z2;
      normal_pair(eng, z1, z2);
      double x = ss * z1;
      double y = x + sn * z2;
      // ln W(y|x) - ln W_{P_M}(y) - C = y^2/(2(S+N)) - (y-x)^2/(2N);
      // the 0.5 ln(1+S/N) prefactor cancels against the centering at C,
      // keeping the running sum O(sqrt n).
      total += y * y * inv2t - (y - x) * (y - x) * inv2n;
    }
    out[static_cast<std::size_t>(r)] = total / std::sqrt(static_cast<double>(n));
  }
  return out;
}

}  // namespace fbc
