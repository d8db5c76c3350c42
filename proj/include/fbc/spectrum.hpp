#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fbc/channel.hpp"

namespace fbc {

// Replica draws of the normalized information-density sum
// (1/sqrt n) sum_i (ln(W(y_i|x_i)/ref(y_i)) - center), with (x_i, y_i)
// i.i.d. from P x W. center is per letter, in nats.
struct SpectrumSample {
  std::vector<double> values;
  long long n = 0;
  double center = 0.0;
  int replicas = 0;
  std::uint64_t seed = 0;
};

// One random codebook with the inductive threshold decoder, error computed
// by full output enumeration. threshold is nats per letter.
struct RandomCodeTrial {
  long long n = 0;
  long long codebook_size = 0;
  double threshold = 0.0;
  double exact_error = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::vector<std::size_t>> codewords;
};

// Log-density interface for distributions over output sequences.
struct SequenceDistribution {
  virtual ~SequenceDistribution() = default;
  virtual double log_density(const std::vector<std::size_t>& y) const = 0;
};

// ref^{x n} for a single-letter law.
class ProductReference : public SequenceDistribution {
 public:
  ProductReference(ProbabilityVector ref, long long n);
  double log_density(const std::vector<std::size_t>& y) const override;

 private:
  std::vector<double> log_ref_;
  long long n_;
};

// Equal-weight mixture of (W_P)^{x n} over all input types P of length n,
// plus one capacity-achieving-output product component. Components are
// product laws, so the log density is a log-sum-exp over per-letter sums.
class MixtureReference : public SequenceDistribution {
 public:
  MixtureReference(const DiscreteChannel& w, long long n);
  double log_density(const std::vector<std::size_t>& y) const override;
  std::size_t component_count() const { return log_rows_.size(); }
  // ln of one unweighted product component at y.
  double log_component(std::size_t k, const std::vector<std::size_t>& y) const;

 private:
  std::vector<std::vector<double>> log_rows_;
  long long n_;
};

// Monte-Carlo sampler. Replica streams depend only on (seed, replica), so
// results are identical for any worker count. Default center is I(P,W).
SpectrumSample sample_information_density(const DiscreteChannel& w, const ProbabilityVector& p,
                                          const ProbabilityVector& ref, long long n, int replicas,
                                          std::uint64_t seed, int workers = 1,
                                          std::optional<double> center = std::nullopt);

// Fraction of sample values strictly below r2.
double empirical_ip(const SpectrumSample& sample, double r2);

// Kolmogorov distance between the empirical CDF of the sample and the
// centered normal CDF G(x / sigma).
double ks_distance(const SpectrumSample& sample, double sigma);

// Exact joint tail P{ (1/n) ln(W^n_x(y)/ref^n(y)) <= r } with x ~ P^{x n},
// y ~ W_x, by enumerating both sequence spaces.
double exact_tail(const DiscreteChannel& w, const ProbabilityVector& p,
                  const ProbabilityVector& ref, long long n, double r);

// Random codebook from P^{x n} with first-claim threshold decoding against
// the product output law of P; exact average error by output enumeration.
RandomCodeTrial exact_random_code(const DiscreteChannel& w, const ProbabilityVector& p,
                                  long long n, long long codebook_size, double r,
                                  std::uint64_t seed);

// Meta-converse style lower bound at rate R = ln(N)/n: returns
// (lhs, rhs) = (code error, average reference tail - e^{n(R-gamma)}/N);
// lhs >= rhs for every code. Tail events use strict <. The reference may be
// any sequence law, in particular the type mixture.
std::pair<double, double> converse_bound_check(const DiscreteChannel& w,
                                               const RandomCodeTrial& trial,
                                               const SequenceDistribution& qref, double gamma);
std::pair<double, double> converse_bound_check(const DiscreteChannel& w,
                                               const RandomCodeTrial& trial,
                                               const ProbabilityVector& qref, double gamma);

// max over decision sets D of P(D) - a Q(D), attained at {P - aQ >= 0}.
double max_discrimination(const ProbabilityVector& p, const ProbabilityVector& q, double a);

// Raw sequence draws for reference-comparison experiments.
struct ChannelDraw {
  std::vector<std::size_t> x;
  std::vector<std::size_t> y;
};
std::vector<ChannelDraw> draw_channel_sequences(const DiscreteChannel& w,
                                                const ProbabilityVector& p, long long n,
                                                int replicas, std::uint64_t seed);

// (1/sqrt n)(ln W^n_x(y) - ref.log_density(y) - n * center).
double sequence_information(const DiscreteChannel& w, const ChannelDraw& draw,
                            const SequenceDistribution& ref, double center);

}  // namespace fbc
