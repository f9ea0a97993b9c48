#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "energy.hpp"
#include "errors.hpp"
#include "gen.hpp"
#include "oracles.hpp"

using namespace sdwave;
using sdwave::test::Gen;
using sdwave::test::rel_diff;

namespace {

const SpectralProfile kZero = SpectralProfile::zero();

}  // namespace

TEST_SUITE("energy") {
  TEST_CASE("band shares at t = 0") {
    const auto r = energy_report(0.0, kZero, SpectralProfile::gaussian(1.0), 1, 1e-12);
    const double c = std::sqrt(std::numbers::pi / 2.0);
    CHECK(rel_diff(r.e_low, c * std::erf(std::numbers::sqrt2)) < 1e-10);
    CHECK(rel_diff(r.e_mid, c * (std::erf(2.0) - std::erf(std::numbers::sqrt2))) < 1e-10);
    CHECK(rel_diff(r.e_high, c * std::erfc(2.0)) < 1e-10);
    CHECK(rel_diff(r.e_total, c) < 1e-10);
    CHECK(r.e_total == r.e_low + r.e_mid + r.e_high);
    CHECK(r.reliable);
  }

  TEST_CASE("zero data has zero energy") {
    for (double t : {0.0, 1.0, 1e4}) {
      const auto r = energy_report(t, kZero, kZero, 2, 1e-8);
      CHECK(r.e_total == 0.0);
      CHECK(r.err_bound == 0.0);
    }
  }

  TEST_CASE("high-band shell against the ODE oracle") {
    const auto shell = SpectralProfile::shell(3.0, 0.5);
    for (double t : {1.0, 10.0, 100.0}) {
      const auto r = energy_report(t, kZero, shell, 1, 1e-10);
      CHECK(r.e_low == 0.0);
      CHECK(r.e_mid == 0.0);
      const std::vector<double> ts{t};
      const auto oracle = integrate(
          [&](double rho) {
            const double b = shell.eval(rho);
            if (b == 0.0) return 0.0;
            const auto s = ode_evolve(rho, 0.0, b, ts).samples[0];
            return s.dv * s.dv + rho * rho * s.v * s.v;
          },
          BandSpec::make(2.5, 3.5), 1e-9);
      CHECK(rel_diff(r.e_high, 2.0 * oracle.value) < 1e-6);
    }
  }

  TEST_CASE("mean and wave parts recombine") {
    Gen g(61);
    const auto u0 = SpectralProfile::gaussian(0.7, 0.5);
    const auto u1 = SpectralProfile::power_tail(2.0);
    for (int i = 0; i < 500; ++i) {
      const double rho = g.uniform(1e-3, 1.2);
      const double t = g.log_uniform(1e-2, 1e4);
      const int n = g.integer(1, 3);
      const double whole = energy_density(t, rho, u0, u1, n);
      const double parts = detail::density_mean(t, rho, u0, u1, n) +
                           detail::density_wave(t, {rho, 0.0}, u0, u1, n).real();
      CHECK(std::abs(whole - parts) <= 1e-12 * detail::density_mean(t, rho, u0, u1, n) + 1e-300);
    }
  }

  TEST_CASE("contour route matches direct quadrature") {
    const auto u0 = SpectralProfile::gaussian(1.0, 0.5);
    const auto u1 = SpectralProfile::gaussian(2.0);
    for (double t : {kContourMinTime, 1e4}) {
      const auto routed = band_energy(t, BandSpec::make(0.0, 1.0), u0, u1, 1, 1e-10);
      QuadratureOptions opt;
      opt.rel_tol = 1e-11;
      for (int k = -8; k <= 0; ++k) opt.extra_breaks.push_back(std::pow(t, -0.25) * std::ldexp(1.0, k));
      const auto direct = integrate(
          [&](double rho) { return energy_density(t, rho, u0, u1, 1); }, BandSpec::make(0.0, 1.0), opt);
      CHECK(rel_diff(routed.value, 2.0 * direct.value) < 1e-8);
    }
  }

  TEST_CASE("total energy never increases") {
    Gen g(62);
    for (int i = 0; i < 8; ++i) {
      const auto u0 = SpectralProfile::gaussian(g.log_uniform(0.3, 3.0), g.uniform(0.0, 1.0));
      const auto u1 = SpectralProfile::power_tail(g.uniform(1.0, 4.0), g.uniform(0.0, 1.0));
      const int n = g.integer(1, 3);
      double t = 0.0;
      auto prev = energy_report(t, u0, u1, n, 1e-8);
      for (int k = 0; k < 6; ++k) {
        t += g.log_uniform(1e-2, 1e3);
        const auto next = energy_report(t, u0, u1, n, 1e-8);
        CHECK(next.e_total <= prev.e_total + 2.0 * (prev.err_bound + next.err_bound));
        prev = next;
      }
    }
  }

  TEST_CASE("gaussian velocity data in one dimension follows t^(-1/4)") {
    const double t = 1e6;
    const auto r = energy_report(t, kZero, SpectralProfile::gaussian(1.0), 1, 1e-10);
    CHECK(rel_diff(r.e_total, 2.0 * std::tgamma(1.25) * std::pow(t, -0.25)) < 2e-3);
    CHECK(r.reliable);
  }

  TEST_CASE("invalid inputs") {
    const auto g = SpectralProfile::gaussian(1.0);
    CHECK_THROWS_AS(energy_report(-1.0, g, g, 1, 1e-8), Error);
    CHECK_THROWS_AS(energy_report(1.0, g, g, 0, 1e-8), Error);
    CHECK_THROWS_AS(energy_report(1.0, SpectralProfile::power_tail(0.4), kZero, 1, 1e-8), Error);
    CHECK_THROWS_AS(validate(BandSplits{1.5, 1.2}), Error);
  }

  TEST_CASE("geometric grid") {
    const auto grid = geometric_grid(0.0625, 2.0, 61);
    REQUIRE(grid.size() == 61);
    CHECK(grid.front() == 0.0625);
    CHECK(grid.back() == std::ldexp(1.0, 56));
    CHECK_THROWS_AS(geometric_grid(0.0, 2.0, 3), Error);
    CHECK_THROWS_AS(geometric_grid(1.0, 1.0, 3), Error);
    CHECK_THROWS_AS(geometric_grid(1.0, 2.0, 0), Error);
    CHECK_THROWS_AS(geometric_grid(1.0, 2.0, kMaxGridSize + 1), Error);
  }

  TEST_CASE("series output") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1e-300) == "1e-300");
    CHECK(format_double(0.0) == "0");

    const auto u1 = SpectralProfile::gaussian(1.0);
    const auto grid = geometric_grid(0.5, 4.0, 12);
    const auto one = energy_series(kZero, u1, 2, grid, 1e-8, {}, 1);
    const auto many = energy_series(kZero, u1, 2, grid, 1e-8, {}, 8);
    const std::string csv = series_csv(one);
    CHECK(csv == series_csv(many));
    CHECK(csv.rfind(std::string(kSeriesCsvHeader) + "\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);
    CHECK(csv.find('\r') == std::string::npos);
    for (std::size_t k = 0; k < one.size(); ++k) {
      CHECK(one[k].t == grid[k]);
      CHECK(one[k].e_total == one[k].e_low + one[k].e_mid + one[k].e_high);
    }
  }

  TEST_CASE("series propagates the first failure") {
    const auto grid = geometric_grid(1.0, 2.0, 4);
    CHECK_THROWS_AS(energy_series(SpectralProfile::power_tail(0.4), kZero, 1, grid, 1e-8, {}, 4),
                    Error);
  }
}
