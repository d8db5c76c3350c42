#include <cmath>
#include <vector>

#include "doctest.h"
#include "fbc/capacity.hpp"
#include "fbc/channel.hpp"
#include "fbc/dispersion.hpp"
#include "fbc/errors.hpp"
#include "fbc/example_family.hpp"

using namespace fbc;

namespace {
DiscreteChannel bsc(double p) { return DiscreteChannel(2, 2, {{1 - p, p}, {p, 1 - p}}); }
const ProbabilityVector kUniform2{std::vector<double>{0.5, 0.5}};
}  // namespace

TEST_CASE("binary symmetric channel dispersion closed form") {
  double p = 0.11;
  double lr = std::log((1 - p) / p);
  double vref = p * (1 - p) * lr * lr;
  CHECK(vref == doctest::Approx(0.4279403169385257).epsilon(1e-14));
  CHECK(conditional_dispersion(bsc(p), kUniform2) == doctest::Approx(vref).epsilon(1e-14));
  // per-row divergences are constant, so the two centerings coincide
  CHECK(unconditional_dispersion(bsc(p), kUniform2) == doctest::Approx(vref).epsilon(1e-14));
}

TEST_CASE("degenerate dispersions") {
  CHECK(conditional_dispersion(bsc(0.5), kUniform2) == doctest::Approx(0.0));
  CHECK(conditional_dispersion(bsc(0.11), ProbabilityVector({1.0, 0.0})) ==
        doctest::Approx(0.0));
}

TEST_CASE("extremes on the binary symmetric channel") {
  auto w = bsc(0.11);
  auto rep = capacity(w);
  auto poly = achiever_polytope(w, rep);
  auto d = dispersion_extremes(w, poly);
  CHECK(d.v_plus == doctest::Approx(0.4279403169385257).epsilon(1e-9));
  CHECK(d.v_minus == doctest::Approx(0.4279403169385257).epsilon(1e-9));
  CHECK(d.v_plus >= d.v_minus);
}

TEST_CASE("dispersion is linear on the achiever polytope") {
  // four-input instance with two distinct polytope vertices
  auto inst = build_example(0.3, 0.2);
  auto rep = capacity(inst.channel);
  auto poly = achiever_polytope(inst.channel, rep);
  REQUIRE(poly.vertices.size() == 2);
  const auto& a = poly.vertices[0];
  const auto& b = poly.vertices[1];
  double va = reference_dispersion(inst.channel, a, rep.q_m);
  double vb = reference_dispersion(inst.channel, b, rep.q_m);
  for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    std::vector<double> mix(4);
    for (std::size_t i = 0; i < 4; ++i) mix[i] = t * a[i] + (1 - t) * b[i];
    ProbabilityVector pm(mix);
    CHECK(reference_dispersion(inst.channel, pm, rep.q_m) ==
          doctest::Approx(t * va + (1 - t) * vb).epsilon(1e-12));
    // mixtures of achievers are achievers, so the conditional form agrees
    CHECK(conditional_dispersion(inst.channel, pm) ==
          doctest::Approx(t * va + (1 - t) * vb).epsilon(1e-9));
  }
}

TEST_CASE("vertex enumeration and simplex agree") {
  auto inst = build_example(0.3, 0.2);
  auto rep = capacity(inst.channel);
  auto poly = achiever_polytope(inst.channel, rep);
  auto dv = dispersion_extremes(inst.channel, poly, ExtremesMethod::vertices);
  auto ds = dispersion_extremes(inst.channel, poly, ExtremesMethod::simplex);
  CHECK(dv.v_plus == doctest::Approx(ds.v_plus).epsilon(1e-9));
  CHECK(dv.v_minus == doctest::Approx(ds.v_minus).epsilon(1e-9));
  CHECK(dv.v_plus == doctest::Approx(0.046883952546271285).epsilon(1e-9));
  CHECK(dv.v_minus == doctest::Approx(0.04666980005001495).epsilon(1e-9));
  CHECK(dv.v_minus < dv.v_plus);
  // the reported extremal laws actually attain the reported values
  CHECK(reference_dispersion(inst.channel, dv.p_plus, rep.q_m) ==
        doctest::Approx(dv.v_plus).epsilon(1e-10));
  CHECK(reference_dispersion(inst.channel, dv.p_minus, rep.q_m) ==
        doctest::Approx(dv.v_minus).epsilon(1e-10));
}

TEST_CASE("reference dispersion validates shapes") {
  auto w = bsc(0.11);
  CHECK_THROWS_AS(reference_dispersion(w, ProbabilityVector({1.0}), kUniform2),
                  dimension_mismatch);
  CHECK_THROWS_AS(reference_dispersion(w, kUniform2, ProbabilityVector({0.2, 0.3, 0.5})),
                  dimension_mismatch);
  CHECK_THROWS_AS(conditional_dispersion(w, ProbabilityVector({0.5, 0.3, 0.2})),
                  dimension_mismatch);
}
