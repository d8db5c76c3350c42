#include "fbc/example_family.hpp"

#include <algorithm>
#include <cmath>

#include "fbc/dispersion.hpp"
#include "fbc/errors.hpp"

namespace fbc {

namespace {

// Root of d(x||q1) = level on a monotone branch; lo..hi must bracket.
double bisect_divergence(double level, double q1, double lo, double hi) {
  auto f = [&](double x) { return binary_divergence(x, q1) - level; };
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw root_bracket_failure("divergence level not bracketed on the branch");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (fhi > 0.0)) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

// Joint law with A uniform and B|A=a ~ Bernoulli-complement(b0a): entry
// order (A,B) -> 2A+B, so the row is (b00, 1-b00, b01, 1-b01)/2 with bXa
// the chance of B=0 given A=a.
std::vector<double> coupled_row(double b0_given_a0, double b0_given_a1) {
  return {0.5 * b0_given_a0, 0.5 * (1.0 - b0_given_a0), 0.5 * b0_given_a1,
          0.5 * (1.0 - b0_given_a1)};
}

void marginals(const std::vector<double>& q, double& a0, double& b0) {
  a0 = q[0] + q[1];
  b0 = q[0] + q[2];
}

}  // namespace

ExampleInstance build_example(double q1, double q2) {
  if (!(q1 >= 0.0 && q1 <= 1.0 && q2 >= 0.0 && q2 <= 1.0))
    throw domain_error("parameters must lie in [0,1]");
  double other = 2.0 * q1 - q2;
  if (other < 0.0 || other > 1.0)
    throw condition_violation("2*q1 - q2 must lie in [0,1]");
  double level = binary_entropy(q1) - 0.5 * (binary_entropy(q2) + binary_entropy(other));
  double cap_bound = -std::log(std::max(q1, 1.0 - q1));
  if (level > cap_bound + 1e-15)
    throw condition_violation("common divergence level exceeds the root-existence bound");

  ExampleInstance inst;
  inst.q1 = q1;
  inst.q2 = q2;
  inst.level = std::max(level, 0.0);

  if (inst.level <= 0.0) {
    inst.p1 = inst.p2 = q1;
  } else {
    inst.p1 = bisect_divergence(inst.level, q1, 1e-12, q1 - 1e-12);
    inst.p2 = bisect_divergence(inst.level, q1, q1 + 1e-12, 1.0 - 1e-12);
  }

  std::vector<std::vector<double>> rows;
  rows.push_back(coupled_row(q2, other));
  rows.push_back(coupled_row(other, q2));
  rows.push_back(coupled_row(inst.p1, inst.p1));
  rows.push_back(coupled_row(inst.p2, inst.p2));
  inst.channel = DiscreteChannel(4, 4, std::move(rows));
  inst.w5 = ProbabilityVector(coupled_row(q1, q1));
  return inst;
}

std::vector<double> verify_equidistance(const ExampleInstance& inst) {
  std::vector<double> out(4);
  std::vector<double> ref(inst.w5.size());
  for (std::size_t y = 0; y < ref.size(); ++y) ref[y] = inst.w5[y];
  for (std::size_t x = 0; x < 4; ++x) out[x] = kl_divergence_raw(inst.channel.row(x), ref);
  return out;
}

std::pair<double, double> example_v_endpoints(const ExampleInstance& inst) {
  if (inst.p1 == inst.p2)
    throw degenerate_vertices("the two root inputs coincide; both dispersions are 0 there");
  ProbabilityVector p(std::vector<double>{0.5, 0.5, 0.0, 0.0});
  double lam = (inst.q1 - inst.p2) / (inst.p1 - inst.p2);
  ProbabilityVector pp(std::vector<double>{0.0, 0.0, lam, 1.0 - lam});
  return {conditional_dispersion(inst.channel, p), conditional_dispersion(inst.channel, pp)};
}

ProjectionTrace alternating_projection_check(const ExampleInstance& inst,
                                             const std::vector<double>& q0, int iters) {
  if (q0.size() != 4) throw dimension_mismatch("joint law must have 4 entries");
  if (iters < 1) throw validation_error("need at least one step");
  ProbabilityVector check(q0);
  std::vector<double> cur(4);
  for (std::size_t i = 0; i < 4; ++i) {
    cur[i] = check[i];
    if (!(cur[i] > 0.0)) throw support_loss("starting law must have full support");
  }

  std::vector<double> w5(4);
  for (std::size_t i = 0; i < 4; ++i) w5[i] = inst.w5[i];
  const double pb0 = inst.q1;

  ProjectionTrace tr;
  tr.steps.reserve(static_cast<std::size_t>(iters));
  tr.pythagorean_residual.reserve(static_cast<std::size_t>(iters));

  for (int k = 1; k <= iters; ++k) {
    double a0, b0;
    marginals(cur, a0, b0);
    std::vector<double> next(4);
    if (k % 2 == 1) {
      // Fix the A marginal: next(a,b) = P^A(a) * cur(b|a).
      if (!(a0 > 0.0) || !(1.0 - a0 > 0.0))
        throw support_loss("A marginal vanished where mass is required");
      next[0] = 0.5 * cur[0] / a0;
      next[1] = 0.5 * cur[1] / a0;
      next[2] = 0.5 * cur[2] / (1.0 - a0);
      next[3] = 0.5 * cur[3] / (1.0 - a0);
    } else {
      // Fix the B marginal: next(a,b) = P^B(b) * cur(a|b).
      if ((pb0 > 0.0 && !(b0 > 0.0)) || (1.0 - pb0 > 0.0 && !(1.0 - b0 > 0.0)))
        throw support_loss("B marginal vanished where mass is required");
      next[0] = b0 > 0.0 ? pb0 * cur[0] / b0 : 0.0;
      next[2] = b0 > 0.0 ? pb0 * cur[2] / b0 : 0.0;
      next[1] = 1.0 - b0 > 0.0 ? (1.0 - pb0) * cur[1] / (1.0 - b0) : 0.0;
      next[3] = 1.0 - b0 > 0.0 ? (1.0 - pb0) * cur[3] / (1.0 - b0) : 0.0;
    }
    double step = kl_divergence_raw(next, cur);
    // D(w5||cur) = D(w5||next) + D(next||cur) whenever w5 already has the
    // marginal the step just fixed.
    double resid = kl_divergence_raw(w5, cur) - kl_divergence_raw(w5, next) - step;
    tr.steps.push_back(step);
    tr.pythagorean_residual.push_back(std::fabs(resid));
    cur = next;
  }
  tr.final_q = cur;
  return tr;
}

double independence_gap(const std::vector<double>& p2_joint, const std::vector<double>& q_joint) {
  if (p2_joint.size() != 4 || q_joint.size() != 4)
    throw dimension_mismatch("joint laws must have 4 entries");
  ProbabilityVector p2(p2_joint), q(q_joint);
  double pa0, pb0;
  std::vector<double> pv(4), qv(4);
  for (std::size_t i = 0; i < 4; ++i) {
    pv[i] = p2[i];
    qv[i] = q[i];
  }
  marginals(pv, pa0, pb0);
  std::vector<double> prod = {pa0 * pb0, pa0 * (1.0 - pb0), (1.0 - pa0) * pb0,
                              (1.0 - pa0) * (1.0 - pb0)};
  return kl_divergence_raw(pv, qv) - kl_divergence_raw(pv, prod);
}

std::vector<SweepRow> example_sweep(double q1_min, double q1_max, int steps) {
  if (!(q1_min < q1_max)) throw validation_error("grid bounds must be increasing");
  if (steps < 2) throw validation_error("need at least two grid points");
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    double q1 = q1_min + (q1_max - q1_min) * static_cast<double>(i) / (steps - 1);
    ExampleInstance inst = build_example(q1, 0.5 * q1);
    auto [vp, vpp] = example_v_endpoints(inst);
    SweepRow row;
    row.q1 = q1;
    row.q2 = 0.5 * q1;
    row.v_p = vp;
    row.v_pprime = vpp;
    row.capacity = inst.level;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace fbc
