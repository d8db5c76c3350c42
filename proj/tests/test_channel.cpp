#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "fbc/channel.hpp"
#include "fbc/errors.hpp"

using namespace fbc;

namespace {

// tiny deterministic generator for random-channel property checks
struct Lcg {
  std::uint64_t s;
  explicit Lcg(std::uint64_t seed) : s(seed) {}
  double next() {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(s >> 11) * 0x1.0p-53;
  }
};

ProbabilityVector random_law(Lcg& g, std::size_t k) {
  std::vector<double> v(k);
  double sum = 0.0;
  for (auto& x : v) {
    x = 0.05 + g.next();
    sum += x;
  }
  for (auto& x : v) x /= sum;
  return ProbabilityVector(v);
}

DiscreteChannel random_channel(Lcg& g, std::size_t nx, std::size_t ny) {
  std::vector<std::vector<double>> rows(nx);
  for (auto& r : rows) {
    r.resize(ny);
    double sum = 0.0;
    for (auto& x : r) {
      x = 0.05 + g.next();
      sum += x;
    }
    for (auto& x : r) x /= sum;
  }
  return DiscreteChannel(nx, ny, rows);
}

}  // namespace

TEST_CASE("probability vector validation") {
  CHECK_THROWS_AS(ProbabilityVector({0.5, -0.1, 0.6}), validation_error);
  CHECK_THROWS_AS(ProbabilityVector({0.5, 0.5 + 1e-6}), validation_error);
  CHECK_THROWS_AS(ProbabilityVector(std::vector<double>{}), validation_error);
  ProbabilityVector p({0.3, 0.7 + 1e-13});
  CHECK(p[0] + p[1] == doctest::Approx(1.0).epsilon(1e-16));
}

TEST_CASE("channel validation") {
  CHECK_THROWS_AS(DiscreteChannel(2, 2, {{0.5, 0.6}, {0.5, 0.4}}), validation_error);
  CHECK_THROWS_AS(DiscreteChannel(2, 2, {{0.5, 0.5}}), dimension_mismatch);
  CHECK_THROWS_AS(DiscreteChannel(0, 2, {}), validation_error);
  DiscreteChannel w(2, 3, {{0.2, 0.3, 0.5}, {1.0, 0.0, 0.0}});
  CHECK(w.input_size() == 2);
  CHECK(w.output_size() == 3);
  CHECK(w(1, 0) == 1.0);
}

TEST_CASE("kl divergence") {
  ProbabilityVector p({0.3, 0.7}), q({0.5, 0.5});
  CHECK(kl_divergence(p, q) == doctest::Approx(0.08228287850505178).epsilon(1e-14));
  CHECK(kl_divergence(p, p) == 0.0);
  CHECK_THROWS_AS(kl_divergence(p, ProbabilityVector({0.2, 0.3, 0.5})), dimension_mismatch);
  CHECK_THROWS_AS(kl_divergence(ProbabilityVector({0.5, 0.5}), ProbabilityVector({1.0, 0.0})),
                  absolute_continuity_violation);
  // 0 ln 0 = 0 on the left
  CHECK(kl_divergence(ProbabilityVector({1.0, 0.0}), q) == doctest::Approx(std::log(2.0)));
  Lcg g(11);
  for (int t = 0; t < 20; ++t) {
    auto a = random_law(g, 4), b = random_law(g, 4);
    CHECK(kl_divergence(a, b) >= 0.0);
  }
}

TEST_CASE("output distribution and mutual information") {
  DiscreteChannel bsc(2, 2, {{0.89, 0.11}, {0.11, 0.89}});
  ProbabilityVector u({0.5, 0.5});
  auto q = output_distribution(bsc, u);
  CHECK(q[0] == doctest::Approx(0.5).epsilon(1e-16));
  double h011 = binary_entropy(0.11);
  CHECK(mutual_information(bsc, u) == doctest::Approx(std::log(2.0) - h011).epsilon(1e-15));
  // deterministic input kills the output spread
  CHECK(mutual_information(bsc, ProbabilityVector({1.0, 0.0})) == doctest::Approx(0.0));
}

TEST_CASE("product channel structure and additivity") {
  Lcg g(5);
  DiscreteChannel w = random_channel(g, 2, 3);
  DiscreteChannel v = random_channel(g, 3, 2);
  DiscreteChannel pr = product_channel(w, v);
  CHECK(pr.input_size() == 6);
  CHECK(pr.output_size() == 6);
  // entry check with the row-major flattening
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t d = 0; d < 2; ++d)
          CHECK(pr(a * 3 + b, c * 2 + d) == doctest::Approx(w(a, c) * v(b, d)).epsilon(1e-16));

  auto pw = random_law(g, 2);
  auto pv = random_law(g, 3);
  std::vector<double> joint(6);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 3; ++b) joint[a * 3 + b] = pw[a] * pv[b];
  double lhs = mutual_information(pr, ProbabilityVector(joint));
  double rhs = mutual_information(w, pw) + mutual_information(v, pv);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("cost function") {
  CHECK_THROWS_AS(CostFunction({1.0, 2.0}, 0.5), validation_error);  // infeasible cap
  CostFunction c({0.0, 1.0}, 0.25);
  CHECK(c.cap() == 0.25);
  CHECK(c.expected_cost(ProbabilityVector({0.75, 0.25})) == doctest::Approx(0.25));
  CostFunction d({2.0, 0.5, 1.0}, 1.5);
  CostFunction pc = product_cost(c, d);
  CHECK(pc.size() == 6);
  CHECK(pc.cap() == doctest::Approx(1.75));
  CHECK(pc.cost(1 * 3 + 2) == doctest::Approx(1.0 + 1.0));
}

TEST_CASE("binary entropy and divergence") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-16));
  CHECK(binary_divergence(0.3, 0.3) == doctest::Approx(0.0));
  CHECK(binary_divergence(0.3, 0.5) == doctest::Approx(0.08228287850505178).epsilon(1e-14));
  CHECK_THROWS_AS(binary_entropy(-0.1), domain_error);
  CHECK_THROWS_AS(binary_entropy(1.1), domain_error);
  CHECK_THROWS_AS(binary_divergence(0.3, 0.0), domain_error);
  CHECK(binary_divergence(0.0, 0.4) == doctest::Approx(-std::log(0.6)).epsilon(1e-15));
}
