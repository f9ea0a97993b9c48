#include <doctest.h>

#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "gen.hpp"
#include "special.hpp"

using namespace sdwave;
using sdwave::test::Gen;
using sdwave::test::rel_diff;

TEST_SUITE("special") {
  TEST_CASE("incomplete gamma reference values") {
    CHECK(rel_diff(special::lower_gamma(1.0, 2.0), 1.0 - std::exp(-2.0)) < 1e-15);
    CHECK(rel_diff(special::lower_gamma(0.25, 16.0), 3.6256098947524091714) < 1e-13);
    CHECK(rel_diff(special::lower_gamma(0.5, 0.01), 0.19933532858067270257) < 1e-13);
    CHECK(rel_diff(special::upper_gamma(3.0, 100.0), 3.7952215107364568494e-40) < 1e-12);
    CHECK(rel_diff(special::lower_gamma(30.0, 25.0), 1.6101194832006306573e30) < 1e-12);
    CHECK(rel_diff(special::gamma_p(2.5, 3.0), 0.69378108158672159912) < 1e-13);
    CHECK(rel_diff(special::gamma_q(10.0, 30.0), 7.1217508628155770916e-6) < 1e-12);
  }

  TEST_CASE("limits") {
    CHECK(special::lower_gamma(2.0, 0.0) == 0.0);
    CHECK(special::gamma_p(2.0, INFINITY) == 1.0);
    CHECK(special::upper_gamma(2.0, INFINITY) == 0.0);
    CHECK_THROWS_AS(special::lower_gamma(0.0, 1.0), Error);
    CHECK_THROWS_AS(special::lower_gamma(1.0, -1.0), Error);
  }

  TEST_CASE("P + Q = 1 across the series / continued-fraction split") {
    Gen g(21);
    for (int i = 0; i < 2000; ++i) {
      const double a = g.log_uniform(0.05, 50.0);
      const double x = g.log_uniform(1e-4, 200.0);
      CHECK(std::abs(special::gamma_p(a, x) + special::gamma_q(a, x) - 1.0) < 1e-13);
      CHECK(rel_diff(special::lower_gamma(a, x) + special::upper_gamma(a, x), std::tgamma(a)) <
            1e-12);
    }
  }

  TEST_CASE("continuity at the route switch x = a + 1") {
    for (double a : {0.25, 1.0, 3.5, 20.0}) {
      const double x = a + 1.0;
      const double below = special::gamma_p(a, std::nextafter(x, 0.0));
      const double above = special::gamma_p(a, x);
      CHECK(rel_diff(below, above) < 1e-13);
    }
  }

  TEST_CASE("beta and sphere measures") {
    CHECK(rel_diff(special::beta(2.5, 1.5), 0.19634954084936207740) < 1e-14);
    CHECK(rel_diff(special::beta(1.0, 3.0), 1.0 / 3.0) < 1e-15);
    CHECK(special::sphere_measure(1) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(special::sphere_measure(2) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-15));
    CHECK(special::sphere_measure(3) == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-15));
    CHECK_THROWS_AS(special::sphere_measure(0), Error);
  }
}
