#include "fbc/channel.hpp"

#include <cmath>
#include <string>

#include "fbc/errors.hpp"

namespace fbc {

namespace {

constexpr double kSumTol = 1e-12;

void validate_and_renormalize(std::vector<double>& p, const char* what) {
  if (p.empty()) {
    throw validation_error(std::string(what) + ": empty distribution");
  }
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw validation_error(std::string(what) + ": entries must be finite and >= 0");
    }
    sum += v;
  }
  if (std::fabs(sum - 1.0) > kSumTol) {
    throw validation_error(std::string(what) + ": entries sum to " + std::to_string(sum) +
                           ", more than 1e-12 away from 1");
  }
  for (double& v : p) v /= sum;
}

}  // namespace

ProbabilityVector::ProbabilityVector(std::vector<double> p) : p_(std::move(p)) {
  validate_and_renormalize(p_, "ProbabilityVector");
}

DiscreteChannel::DiscreteChannel(std::size_t input_size, std::size_t output_size,
                                 std::vector<std::vector<double>> matrix)
    : nx_(input_size), ny_(output_size), w_(std::move(matrix)) {
  if (nx_ == 0 || ny_ == 0) {
    throw validation_error("DiscreteChannel: alphabet sizes must be positive");
  }
  if (w_.size() != nx_) {
    throw dimension_mismatch("DiscreteChannel: matrix has " + std::to_string(w_.size()) +
                             " rows, expected " + std::to_string(nx_));
  }
  for (std::size_t x = 0; x < nx_; ++x) {
    if (w_[x].size() != ny_) {
      throw dimension_mismatch("DiscreteChannel: row " + std::to_string(x) + " has " +
                               std::to_string(w_[x].size()) + " entries, expected " +
                               std::to_string(ny_));
    }
    validate_and_renormalize(w_[x], "DiscreteChannel row");
  }
}

CostFunction::CostFunction(std::vector<double> costs, double cap)
    : costs_(std::move(costs)), cap_(cap) {
  if (costs_.empty()) {
    throw validation_error("CostFunction: empty cost vector");
  }
  double lo = costs_[0];
  for (double c : costs_) {
    if (!std::isfinite(c)) throw validation_error("CostFunction: costs must be finite");
    lo = std::min(lo, c);
  }
  if (!std::isfinite(cap_)) throw validation_error("CostFunction: cap must be finite");
  if (lo > cap_) {
    throw empty_feasible_set("CostFunction: min cost " + std::to_string(lo) +
                             " exceeds cap " + std::to_string(cap_));
  }
}

double CostFunction::expected_cost(const ProbabilityVector& p) const {
  if (p.size() != costs_.size()) {
    throw dimension_mismatch("expected_cost: distribution/cost size mismatch");
  }
  double s = 0.0;
  for (std::size_t x = 0; x < costs_.size(); ++x) s += p[x] * costs_[x];
  return s;
}

double kl_divergence_raw(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) {
    throw dimension_mismatch("kl_divergence: length mismatch");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) {
      throw absolute_continuity_violation("kl_divergence: p has mass at index " +
                                          std::to_string(i) + " where q vanishes");
    }
    d += p[i] * std::log(p[i] / q[i]);
  }
  return d;
}

double kl_divergence(const ProbabilityVector& p, const ProbabilityVector& q) {
  return kl_divergence_raw(p.values(), q.values());
}

ProbabilityVector output_distribution(const DiscreteChannel& w, const ProbabilityVector& p) {
  if (p.size() != w.input_size()) {
    throw dimension_mismatch("output_distribution: input distribution size mismatch");
  }
  std::vector<double> out(w.output_size(), 0.0);
  for (std::size_t x = 0; x < w.input_size(); ++x) {
    if (p[x] == 0.0) continue;
    for (std::size_t y = 0; y < w.output_size(); ++y) out[y] += p[x] * w(x, y);
  }
  return ProbabilityVector(out);
}

double mutual_information(const DiscreteChannel& w, const ProbabilityVector& p) {
  ProbabilityVector q = output_distribution(w, p);
  double info = 0.0;
  for (std::size_t x = 0; x < w.input_size(); ++x) {
    if (p[x] == 0.0) continue;
    info += p[x] * kl_divergence_raw(w.row(x), q.values());
  }
  return info;
}

DiscreteChannel product_channel(const DiscreteChannel& w, const DiscreteChannel& v) {
  std::size_t nx = w.input_size() * v.input_size();
  std::size_t ny = w.output_size() * v.output_size();
  std::vector<std::vector<double>> m(nx, std::vector<double>(ny));
  for (std::size_t a = 0; a < w.input_size(); ++a) {
    for (std::size_t b = 0; b < v.input_size(); ++b) {
      std::vector<double>& row = m[a * v.input_size() + b];
      for (std::size_t y = 0; y < w.output_size(); ++y) {
        for (std::size_t z = 0; z < v.output_size(); ++z) {
          row[y * v.output_size() + z] = w(a, y) * v(b, z);
        }
      }
    }
  }
  return DiscreteChannel(nx, ny, std::move(m));
}

CostFunction product_cost(const CostFunction& c, const CostFunction& d) {
  std::vector<double> combined(c.size() * d.size());
  for (std::size_t a = 0; a < c.size(); ++a) {
    for (std::size_t b = 0; b < d.size(); ++b) {
      combined[a * d.size() + b] = c.cost(a) + d.cost(b);
    }
  }
  return CostFunction(std::move(combined), c.cap() + d.cap());
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw domain_error("binary_entropy: argument outside [0,1]");
  }
  double h = 0.0;
  if (x > 0.0) h -= x * std::log(x);
  if (x < 1.0) h -= (1.0 - x) * std::log(1.0 - x);
  return h;
}

double binary_divergence(double x, double y) {
  if (!(x >= 0.0 && x <= 1.0) || !(y >= 0.0 && y <= 1.0)) {
    throw domain_error("binary_divergence: arguments outside [0,1]");
  }
  double d = 0.0;
  if (x > 0.0) {
    if (y == 0.0) throw domain_error("binary_divergence: x > 0 with y = 0");
    d += x * std::log(x / y);
  }
  if (x < 1.0) {
    if (y == 1.0) throw domain_error("binary_divergence: x < 1 with y = 1");
    d += (1.0 - x) * std::log((1.0 - x) / (1.0 - y));
  }
  return d;
}

}  // namespace fbc
