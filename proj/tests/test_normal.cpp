#include <cmath>
#include <vector>

#include "doctest.h"
#include "fbc/errors.hpp"
#include "fbc/normal.hpp"

using namespace fbc;

TEST_CASE("cdf reference values") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(normal_cdf(-3.0) == doctest::Approx(0.0013498980316300946).epsilon(1e-13));
  // symmetry G(x) + G(-x) = 1
  for (double x : {0.1, 0.7, 1.5, 2.9, 4.2}) {
    CHECK(normal_cdf(x) + normal_cdf(-x) == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK(normal_cdf(10.0) == doctest::Approx(1.0).epsilon(1e-16));
  CHECK(normal_cdf(-40.0) >= 0.0);
  CHECK(normal_cdf(-40.0) < 1e-300);
}

TEST_CASE("logcdf matches ln(cdf) where both are representable") {
  for (double x : {-1.0, -2.0, -3.0, -5.0}) {
    CHECK(normal_logcdf(x) == doctest::Approx(std::log(normal_cdf(x))).epsilon(1e-12));
  }
}

TEST_CASE("logcdf deep left tail") {
  // reference values computed at 60 digits
  CHECK(normal_logcdf(-1.0) == doctest::Approx(-1.8410216450092636).epsilon(1e-13));
  CHECK(normal_logcdf(-8.0) == doctest::Approx(-35.01343715991455).epsilon(1e-13));
  CHECK(normal_logcdf(-20.0) == doctest::Approx(-203.91715537109727).epsilon(1e-13));
  CHECK(normal_logcdf(-37.5) == doctest::Approx(-707.6689893175072).epsilon(1e-13));
  CHECK(std::isfinite(normal_logcdf(-200.0)));
}

TEST_CASE("quantile reference values and round trip") {
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(normal_quantile(0.05) == doctest::Approx(-1.6448536269514729).epsilon(1e-12));
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
  std::vector<double> ps = {1e-9, 1e-4, 0.02, 0.3, 0.5, 0.77, 0.999, 1.0 - 1e-9};
  for (double p : ps) {
    CHECK(std::fabs(normal_cdf(normal_quantile(p)) - p) <= 1e-12);
  }
  // antisymmetry
  CHECK(normal_quantile(0.25) == doctest::Approx(-normal_quantile(0.75)).epsilon(1e-12));
}

TEST_CASE("quantile domain errors") {
  CHECK_THROWS_AS(normal_quantile(0.0), domain_error);
  CHECK_THROWS_AS(normal_quantile(1.0), domain_error);
  CHECK_THROWS_AS(normal_quantile(-0.2), domain_error);
  CHECK_THROWS_AS(normal_quantile(1.2), domain_error);
}
