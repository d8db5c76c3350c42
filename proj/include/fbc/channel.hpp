#pragma once

#include <cstddef>
#include <vector>

namespace fbc {

// Probability vector on a finite alphabet. Construction validates entries
// are nonnegative and the sum is within 1e-12 of one, then renormalizes so
// downstream sums can rely on an exact total of 1.
class ProbabilityVector {
 public:
  ProbabilityVector() = default;
  explicit ProbabilityVector(std::vector<double> p);

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  const std::vector<double>& values() const { return p_; }

 private:
  std::vector<double> p_;
};

// Discrete memoryless channel, stored row-major: row x is W(.|x).
// Every row is validated and renormalized like a ProbabilityVector.
class DiscreteChannel {
 public:
  DiscreteChannel() = default;
  DiscreteChannel(std::size_t input_size, std::size_t output_size,
                  std::vector<std::vector<double>> matrix);

  std::size_t input_size() const { return nx_; }
  std::size_t output_size() const { return ny_; }
  double operator()(std::size_t x, std::size_t y) const { return w_[x][y]; }
  const std::vector<double>& row(std::size_t x) const { return w_[x]; }

 private:
  std::size_t nx_ = 0, ny_ = 0;
  std::vector<std::vector<double>> w_;
};

// Per-letter input cost with a budget cap. min(costs) must not exceed the
// cap, otherwise the feasible input set is empty.
class CostFunction {
 public:
  CostFunction() = default;
  CostFunction(std::vector<double> costs, double cap);

  std::size_t size() const { return costs_.size(); }
  double cost(std::size_t x) const { return costs_[x]; }
  const std::vector<double>& costs() const { return costs_; }
  double cap() const { return cap_; }
  double expected_cost(const ProbabilityVector& p) const;

 private:
  std::vector<double> costs_;
  double cap_ = 0.0;
};

// D(p||q) in nats, 0 ln 0 = 0. Throws absolute_continuity_violation when
// p puts mass where q has none, dimension_mismatch on unequal lengths.
double kl_divergence(const ProbabilityVector& p, const ProbabilityVector& q);

// Same divergence on raw rows (no renormalization); used on channel rows.
double kl_divergence_raw(const std::vector<double>& p, const std::vector<double>& q);

// Output distribution W_P(y) = sum_x P(x) W(y|x).
ProbabilityVector output_distribution(const DiscreteChannel& w, const ProbabilityVector& p);

// I(P, W) = sum_x P(x) D(W_x || W_P), in nats.
double mutual_information(const DiscreteChannel& w, const ProbabilityVector& p);

// Product channel on the paired alphabets; inputs (x, x') are flattened
// row-major as x * |X'| + x', outputs likewise.
DiscreteChannel product_channel(const DiscreteChannel& w, const DiscreteChannel& v);

// Sum cost on the product alphabet: (c + c')(x, x') = c(x) + c'(x'),
// cap K + K'. Flattening matches product_channel.
CostFunction product_cost(const CostFunction& c, const CostFunction& d);

// Binary entropy h(x) and divergence d(x||y), natural log. Domain errors
// outside [0,1] (and, for d, when y is 0 or 1 while x is not).
double binary_entropy(double x);
double binary_divergence(double x, double y);

}  // namespace fbc
