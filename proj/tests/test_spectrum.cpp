#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "fbc/channel.hpp"
#include "fbc/errors.hpp"
#include "fbc/normal.hpp"
#include "fbc/spectrum.hpp"

using namespace fbc;

namespace {
DiscreteChannel bsc(double p) { return DiscreteChannel(2, 2, {{1 - p, p}, {p, 1 - p}}); }
DiscreteChannel identity4() {
  return DiscreteChannel(4, 4,
                         {{1.0, 0.0, 0.0, 0.0},
                          {0.0, 1.0, 0.0, 0.0},
                          {0.0, 0.0, 1.0, 0.0},
                          {0.0, 0.0, 0.0, 1.0}});
}
const ProbabilityVector kUniform2{std::vector<double>{0.5, 0.5}};
const ProbabilityVector kUniform4{std::vector<double>{0.25, 0.25, 0.25, 0.25}};
}  // namespace

TEST_CASE("noiseless channel accumulates exact zeros") {
  auto w = identity4();
  auto s = sample_information_density(w, kUniform4, kUniform4, 6, 32, 3, 1, std::log(4.0));
  REQUIRE(s.values.size() == 32);
  for (double v : s.values) CHECK(v == 0.0);
  // the default center is I(P,W) which lands on the same value
  auto s2 = sample_information_density(w, kUniform4, kUniform4, 6, 32, 3);
  CHECK(s2.center == doctest::Approx(std::log(4.0)).epsilon(1e-16));
  for (double v : s2.values) CHECK(v == 0.0);
}

TEST_CASE("sampler is worker-count invariant and seed sensitive") {
  auto w = bsc(0.11);
  auto a = sample_information_density(w, kUniform2, kUniform2, 60, 64, 42, 1);
  auto b = sample_information_density(w, kUniform2, kUniform2, 60, 64, 42, 3);
  auto c = sample_information_density(w, kUniform2, kUniform2, 60, 64, 42, 64);
  CHECK(a.values == b.values);
  CHECK(a.values == c.values);
  auto d = sample_information_density(w, kUniform2, kUniform2, 60, 64, 43, 1);
  CHECK(a.values != d.values);
}

TEST_CASE("sampler validation") {
  auto w = bsc(0.11);
  CHECK_THROWS_AS(sample_information_density(w, kUniform4, kUniform2, 5, 4, 1),
                  dimension_mismatch);
  CHECK_THROWS_AS(sample_information_density(w, kUniform2, kUniform4, 5, 4, 1),
                  dimension_mismatch);
  CHECK_THROWS_AS(
      sample_information_density(w, kUniform2, ProbabilityVector({1.0, 0.0}), 5, 4, 1),
      absolute_continuity_violation);
  CHECK_THROWS_AS(sample_information_density(w, kUniform2, kUniform2, 0, 4, 1),
                  validation_error);
  CHECK_THROWS_AS(sample_information_density(w, kUniform2, kUniform2, 5, 0, 1),
                  validation_error);
  CHECK_THROWS_AS(sample_information_density(w, kUniform2, kUniform2, 5, 4, 1, 0),
                  validation_error);
}

TEST_CASE("empirical tail probability uses a strict cut") {
  SpectrumSample s;
  s.values = {-1.0, 0.0, 1.0};
  CHECK(empirical_ip(s, 0.0) == doctest::Approx(1.0 / 3.0));
  CHECK(empirical_ip(s, 1.5) == doctest::Approx(1.0));
  CHECK(empirical_ip(s, -1.0) == doctest::Approx(0.0));
  CHECK(empirical_ip(s, -5.0) == doctest::Approx(0.0));
  SpectrumSample e;
  CHECK_THROWS_AS(empirical_ip(e, 0.0), validation_error);
}

TEST_CASE("kolmogorov distance hand values") {
  SpectrumSample s;
  s.values = {0.0};
  CHECK(ks_distance(s, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  SpectrumSample t;
  t.values = {1.0, -1.0};
  double g1 = normal_cdf(-1.0);
  CHECK(ks_distance(t, 1.0) == doctest::Approx(0.5 - g1).epsilon(1e-13));
  CHECK_THROWS_AS(ks_distance(t, 0.0), domain_error);
}

TEST_CASE("large-sample distance against the clt prediction") {
  auto w = bsc(0.11);
  // center at capacity, compare against sigma = sqrt(V)
  auto s = sample_information_density(w, kUniform2, kUniform2, 2000, 2000, 42, 4,
                                      0.34663184364127914);
  double d = ks_distance(s, std::sqrt(0.4279403169385257));
  CHECK(d <= 0.05);
}

TEST_CASE("exact tail on the noiseless channel") {
  auto w = identity4();
  double l4 = std::log(4.0);
  CHECK(exact_tail(w, kUniform4, kUniform4, 2, l4) == doctest::Approx(1.0));
  CHECK(exact_tail(w, kUniform4, kUniform4, 2, l4 - 1e-9) == doctest::Approx(0.0));
  CHECK(exact_tail(w, kUniform4, kUniform4, 2, 10.0) == doctest::Approx(1.0));
}

TEST_CASE("exact tail hand values on the binary symmetric channel") {
  auto w = bsc(0.11);
  // n = 1: the per-letter ratio is ln(1.78) on agreement, ln(0.22) on a flip
  double mid = 0.5 * (std::log(0.22) + std::log(1.78));
  CHECK(exact_tail(w, kUniform2, kUniform2, 1, mid) == doctest::Approx(0.11).epsilon(1e-14));
  // n = 2 at threshold 0: only the zero-flip sequences clear it
  CHECK(exact_tail(w, kUniform2, kUniform2, 2, 0.0) ==
        doctest::Approx(1.0 - 0.89 * 0.89).epsilon(1e-14));
  CHECK_THROWS_AS(exact_tail(w, kUniform2, kUniform2, 15, 0.0), enumeration_too_large);
  CHECK_THROWS_AS(exact_tail(w, kUniform2, kUniform2, 0, 0.0), validation_error);
}

TEST_CASE("single-codeword error equals the tail for a symmetric channel") {
  auto w = bsc(0.11);
  for (std::uint64_t seed : {1ULL, 2ULL, 9ULL}) {
    auto trial = exact_random_code(w, kUniform2, 3, 1, 0.2, seed);
    CHECK(trial.exact_error ==
          doctest::Approx(exact_tail(w, kUniform2, kUniform2, 3, 0.2)).epsilon(1e-14));
  }
}

TEST_CASE("noiseless channel decoding errors come from collisions only") {
  auto w = identity4();
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    auto trial = exact_random_code(w, kUniform4, 1, 2, 0.2, seed);
    REQUIRE(trial.codewords.size() == 2);
    bool collide = trial.codewords[0][0] == trial.codewords[1][0];
    CHECK(trial.exact_error == doctest::Approx(collide ? 0.5 : 0.0));
  }
  // threshold above ln 4: nothing ever claims
  auto blocked = exact_random_code(w, kUniform4, 1, 2, 2.0, 0);
  CHECK(blocked.exact_error == doctest::Approx(1.0));
}

TEST_CASE("converse lower bound holds for uniform and mixture references") {
  auto w = bsc(0.11);
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto trial = exact_random_code(w, kUniform2, 6, 8, 0.15, seed);
    auto [lhs_u, rhs_u] = converse_bound_check(w, trial, kUniform2, 0.1);
    CHECK(lhs_u == trial.exact_error);
    CHECK(lhs_u >= rhs_u);
    MixtureReference mix(w, 6);
    auto [lhs_m, rhs_m] = converse_bound_check(w, trial, mix, 0.1);
    CHECK(lhs_m >= rhs_m);
  }
}

TEST_CASE("vector reference overload matches the product form") {
  auto w = bsc(0.11);
  auto trial = exact_random_code(w, kUniform2, 5, 4, 0.1, 3);
  ProductReference prod(kUniform2, 5);
  auto a = converse_bound_check(w, trial, kUniform2, 0.07);
  auto b = converse_bound_check(w, trial, static_cast<const SequenceDistribution&>(prod), 0.07);
  CHECK(a.first == b.first);
  CHECK(a.second == b.second);
}

TEST_CASE("product reference log density") {
  ProductReference ref(kUniform4, 3);
  std::vector<std::size_t> y = {0, 2, 3};
  CHECK(ref.log_density(y) == doctest::Approx(-3.0 * std::log(4.0)).epsilon(1e-15));
}

TEST_CASE("mixture reference component census") {
  auto w = bsc(0.11);
  MixtureReference m2(w, 2);
  CHECK(m2.component_count() == 4);  // 3 types + capacity output
  MixtureReference m8(w, 8);
  CHECK(m8.component_count() == 10);
  MixtureReference mid(identity4(), 2);
  CHECK(mid.component_count() == 11);  // C(5,3) compositions + 1
}

TEST_CASE("mixture density dominates every component") {
  auto w = bsc(0.11);
  MixtureReference mix(w, 2);
  double lnm = std::log(static_cast<double>(mix.component_count()));
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      std::vector<std::size_t> y = {a, b};
      double ld = mix.log_density(y);
      double total = 0.0;
      for (std::size_t k = 0; k < mix.component_count(); ++k) {
        CHECK(ld >= mix.log_component(k, y) - lnm - 1e-12);
        total += std::exp(mix.log_component(k, y));
      }
      CHECK(ld == doctest::Approx(std::log(total / 4.0)).epsilon(1e-13));
    }
  // hand value at y = (0,0): types give 0.89^2, 0.25, 0.11^2, capacity gives 0.25
  std::vector<std::size_t> y00 = {0, 0};
  double expect = std::log((0.89 * 0.89 + 0.25 + 0.11 * 0.11 + 0.25) / 4.0);
  CHECK(mix.log_density(y00) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("mixture shifts the information density by at most ln(M)/sqrt(n)") {
  auto w = bsc(0.11);
  const long long n = 6;
  MixtureReference mix(w, n);
  double lnm = std::log(static_cast<double>(mix.component_count()));
  double c = mutual_information(w, kUniform2);
  auto draws = draw_channel_sequences(w, kUniform2, n, 20, 11);
  REQUIRE(draws.size() == 20);
  for (const auto& d : draws) {
    // product reference at the empirical type of the transmitted word
    std::vector<double> cnt = {0.0, 0.0};
    for (auto xi : d.x) cnt[xi] += 1.0;
    std::vector<double> q = {0.0, 0.0};
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t yy = 0; yy < 2; ++yy) q[yy] += (cnt[x] / n) * w(x, yy);
    ProductReference type_ref(ProbabilityVector(q), n);
    double i_type = sequence_information(w, d, type_ref, c);
    double i_mix = sequence_information(w, d, mix, c);
    CHECK(i_mix <= i_type + lnm / std::sqrt(static_cast<double>(n)) + 1e-12);
  }
}

TEST_CASE("draws are deterministic and stay on the channel support") {
  auto w = bsc(0.11);
  auto a = draw_channel_sequences(w, kUniform2, 9, 7, 5);
  auto b = draw_channel_sequences(w, kUniform2, 9, 7, 5);
  REQUIRE(a.size() == 7);
  for (std::size_t r = 0; r < a.size(); ++r) {
    CHECK(a[r].x == b[r].x);
    CHECK(a[r].y == b[r].y);
    REQUIRE(a[r].x.size() == 9);
    for (std::size_t t = 0; t < 9; ++t) CHECK(w(a[r].x[t], a[r].y[t]) > 0.0);
  }
}

TEST_CASE("sequence information rejects off-support draws") {
  auto w = identity4();
  ChannelDraw d;
  d.x = {0};
  d.y = {1};
  ProductReference ref(kUniform4, 1);
  CHECK_THROWS_AS(sequence_information(w, d, ref, 0.0), absolute_continuity_violation);
}

TEST_CASE("discrimination maximum against subset exhaustion") {
  ProbabilityVector p({0.4, 0.3, 0.2, 0.1});
  ProbabilityVector q({0.1, 0.2, 0.3, 0.4});
  for (double a : {0.3, 0.7, 1.0, 2.5}) {
    double brute = 0.0;
    for (int mask = 0; mask < 16; ++mask) {
      double v = 0.0;
      for (int u = 0; u < 4; ++u)
        if (mask & (1 << u)) v += p[u] - a * q[u];
      if (v > brute) brute = v;
    }
    CHECK(max_discrimination(p, q, a) == doctest::Approx(brute).epsilon(1e-14));
  }
  CHECK(max_discrimination(p, p, 1.0) == doctest::Approx(0.0));
  CHECK(max_discrimination(p, q, 1e9) == doctest::Approx(0.0));
  CHECK_THROWS_AS(max_discrimination(p, q, 0.0), domain_error);
  CHECK_THROWS_AS(max_discrimination(p, ProbabilityVector({0.5, 0.5}), 1.0),
                  dimension_mismatch);
}

TEST_CASE("oracle guards map to the enumeration category") {
  auto w = bsc(0.11);
  CHECK_THROWS_AS(exact_random_code(w, kUniform2, 15, 2, 0.1, 1), enumeration_too_large);
  auto trial = exact_random_code(w, kUniform2, 4, 2, 0.1, 1);
  trial.n = 15;
  CHECK_THROWS_AS(converse_bound_check(w, trial, kUniform2, 0.1), enumeration_too_large);
  // mixture type census guard
  DiscreteChannel big(5, 2,
                      {{0.9, 0.1}, {0.8, 0.2}, {0.7, 0.3}, {0.6, 0.4}, {0.5, 0.5}});
  CHECK_THROWS_AS(MixtureReference(big, 400), type_enumeration_too_large);
}
