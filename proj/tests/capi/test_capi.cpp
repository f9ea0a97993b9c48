#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sdwave/sdwave.h>

#include <cmath>
#include <string>
#include <vector>

namespace {

const char* kConfig =
    "n = 1\n"
    "t0 = 1\n"
    "ratio = 4\n"
    "steps = 8\n"
    "rel_tol = 1e-8\n"
    "[u1]\n"
    "kind = gaussian\n";

struct Tally {
  int pass = 0;
  int fail = 0;
  std::string first_suite;
};

void count(const sdw_check_t* c, void* user) {
  auto* tally = static_cast<Tally*>(user);
  if (tally->first_suite.empty()) tally->first_suite = c->suite;
  if (c->status == SDW_CHECK_PASS) ++tally->pass;
  if (c->status == SDW_CHECK_FAIL) ++tally->fail;
}

}  // namespace

TEST_SUITE("capi") {
  TEST_CASE("metadata") {
    CHECK(std::string(sdw_version()).size() > 0);
    CHECK(std::string(sdw_error_description(SDW_ERROR_DOMAIN)).size() > 0);
    CHECK(std::string(sdw_regime_name(SDW_REGIME_CRITICAL)) == "Critical");
    CHECK(sdw_suite_count() == 10);
    CHECK(std::string(sdw_suite_name(0)) == "multiplier-exactness");
    CHECK(sdw_suite_name(99) == nullptr);
  }

  TEST_CASE("multipliers") {
    sdw_char_roots_t roots;
    REQUIRE(sdw_char_roots(1.259921049894873, &roots) == SDW_OK);
    CHECK(roots.regime == SDW_REGIME_CRITICAL);
    CHECK(roots.near_ring == 1);
    double e0 = 0, e1 = 0;
    REQUIRE(sdw_propagators(1.0, 1.0, &e0, &e1) == SDW_OK);
    CHECK(e0 == doctest::Approx(0.39294655583435517059).epsilon(1e-14));
    double u = 0, ut = 0;
    REQUIRE(sdw_eval_state(2.0, 1.5, 1.0, 0.0, &u, &ut) == SDW_OK);
    CHECK(u == doctest::Approx(0.41866069510369294678).epsilon(1e-14));
    CHECK(std::string(sdw_last_error()).empty());

    CHECK(sdw_char_roots(-1.0, &roots) == SDW_ERROR_DOMAIN);
    CHECK_FALSE(std::string(sdw_last_error()).empty());
    CHECK(sdw_char_roots(1.0, nullptr) == SDW_ERROR_NULL_POINTER);
    CHECK(sdw_propagators(1.0, 1.0, nullptr, &e1) == SDW_ERROR_NULL_POINTER);
  }

  TEST_CASE("profiles") {
    sdw_profile_t p = nullptr;
    REQUIRE(sdw_profile_power_tail(2.0, 1.0, &p) == SDW_OK);
    double v = 0, err = 0;
    REQUIRE(sdw_profile_sobolev(p, 0.0, 1, 1e-12, &v, &err) == SDW_OK);
    CHECK(v == doctest::Approx(2.0 / 3.0).epsilon(1e-11));
    CHECK(sdw_profile_sobolev(p, 2.0, 1, 1e-10, &v, &err) == SDW_ERROR_DIVERGENT_NORM);
    REQUIRE(sdw_profile_eval(p, 1.0, &v) == SDW_OK);
    CHECK(v == 0.25);
    CHECK(sdw_profile_destroy(p) == SDW_OK);
    CHECK(sdw_profile_destroy(nullptr) == SDW_OK);
    CHECK(sdw_profile_gaussian(0.0, 1.0, &p) == SDW_ERROR_INVALID_ARGUMENT);
    CHECK(sdw_profile_eval(nullptr, 1.0, &v) == SDW_ERROR_NULL_POINTER);
  }

  TEST_CASE("scenarios and the buffer protocol") {
    sdw_scenario_t sc = nullptr;
    REQUIRE(sdw_scenario_parse(kConfig, &sc) == SDW_OK);
    size_t len = 0;
    REQUIRE(sdw_scenario_serialize(sc, nullptr, &len) == SDW_OK);
    REQUIRE(len > 1);
    std::vector<char> small(len - 1);
    size_t small_len = small.size();
    CHECK(sdw_scenario_serialize(sc, small.data(), &small_len) == SDW_ERROR_BUFFER_TOO_SMALL);
    CHECK(small_len == len);
    std::vector<char> buf(len);
    REQUIRE(sdw_scenario_serialize(sc, buf.data(), &len) == SDW_OK);
    CHECK(std::string(buf.data()).find("kind = gaussian") != std::string::npos);

    sdw_scenario_t round = nullptr;
    REQUIRE(sdw_scenario_parse(buf.data(), &round) == SDW_OK);
    sdw_scenario_destroy(round);

    sdw_scenario_t bad = nullptr;
    CHECK(sdw_scenario_parse("n = 0\n", &bad) == SDW_ERROR_CONFIG);
    CHECK(std::string(sdw_last_error()).find("line 1") != std::string::npos);
    CHECK(bad == nullptr);
    CHECK(sdw_scenario_load("/nonexistent/x.cfg", &bad) == SDW_ERROR_IO);
    CHECK(sdw_scenario_parse(nullptr, &bad) == SDW_ERROR_NULL_POINTER);

    sdw_scenario_t tight = nullptr;
    CHECK(sdw_scenario_with_tol(sc, 1e-20, &tight) == SDW_ERROR_INVALID_ARGUMENT);
    REQUIRE(sdw_scenario_with_tol(sc, 1e-10, &tight) == SDW_OK);

    sdw_energy_report_t r;
    REQUIRE(sdw_energy_at(tight, 0.0, &r) == SDW_OK);
    CHECK(r.e_total == doctest::Approx(1.2533141373155002512).epsilon(1e-9));
    CHECK(r.reliable == 1);
    CHECK(sdw_energy_at(tight, -1.0, &r) != SDW_OK);
    sdw_scenario_destroy(tight);
    sdw_scenario_destroy(sc);
  }

  TEST_CASE("series") {
    sdw_scenario_t sc = nullptr;
    REQUIRE(sdw_scenario_parse(kConfig, &sc) == SDW_OK);
    sdw_series_t a = nullptr, b = nullptr;
    REQUIRE(sdw_series_compute(sc, 1, &a) == SDW_OK);
    REQUIRE(sdw_series_compute(sc, 4, &b) == SDW_OK);
    size_t n = 0;
    REQUIRE(sdw_series_size(a, &n) == SDW_OK);
    CHECK(n == 8);
    sdw_energy_report_t r;
    CHECK(sdw_series_get(a, 8, &r) == SDW_ERROR_INVALID_ARGUMENT);
    REQUIRE(sdw_series_get(a, 7, &r) == SDW_OK);
    CHECK(r.t == 16384.0);
    int ok = 0;
    REQUIRE(sdw_series_reliable(a, &ok) == SDW_OK);
    CHECK(ok == 1);

    size_t la = 0, lb = 0;
    REQUIRE(sdw_series_csv(a, nullptr, &la) == SDW_OK);
    REQUIRE(sdw_series_csv(b, nullptr, &lb) == SDW_OK);
    REQUIRE(la == lb);
    std::vector<char> ca(la), cb(lb);
    REQUIRE(sdw_series_csv(a, ca.data(), &la) == SDW_OK);
    REQUIRE(sdw_series_csv(b, cb.data(), &lb) == SDW_OK);
    CHECK(std::string(ca.data()) == std::string(cb.data()));

    sdw_rate_fit_t fit;
    CHECK(sdw_series_fit(a, &fit) == SDW_OK);
    CHECK(fit.points == 3);
    CHECK(fit.slope < 0.0);

    sdw_series_destroy(a);
    sdw_series_destroy(b);
    sdw_scenario_destroy(sc);
  }

  TEST_CASE("analysis") {
    const double t[] = {1, 2, 4, 8};
    const double v[] = {1, 0.5, 0.25, 0.125};
    sdw_rate_fit_t fit;
    REQUIRE(sdw_fit_rate(t, v, 4, 1, 8, &fit) == SDW_OK);
    CHECK(fit.slope == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(sdw_fit_rate(t, v, 4, 1, 2, &fit) == SDW_ERROR_INSUFFICIENT_POINTS);
    const double neg[] = {1, -1, 1, 1};
    CHECK(sdw_fit_rate(t, neg, 4, 1, 8, &fit) == SDW_ERROR_NON_POSITIVE_VALUE);
    CHECK(sdw_fit_rate(nullptr, v, 4, 1, 8, &fit) == SDW_ERROR_NULL_POINTER);
    double k = 0;
    REQUIRE(sdw_kernel_low_norm(1, 0.0, 16.0, &k) == SDW_OK);
    CHECK(k == doctest::Approx(0.95205171796919850572).epsilon(1e-13));
    REQUIRE(sdw_kernel_sup(2.0, 10.0, &k) == SDW_OK);
    CHECK(k == doctest::Approx(0.03678794411714423216).epsilon(1e-15));
  }

  TEST_CASE("verification callback") {
    Tally tally;
    int passed = 0;
    REQUIRE(sdw_verify("inequalities", 2, count, &tally, &passed) == SDW_OK);
    CHECK(passed == 1);
    CHECK(tally.pass > 100);
    CHECK(tally.fail == 0);
    CHECK(tally.first_suite == "inequalities");
    CHECK(sdw_verify("no-such-suite", 1, count, &tally, &passed) == SDW_ERROR_INVALID_ARGUMENT);
    CHECK(sdw_verify("inequalities", 1, nullptr, nullptr, &passed) == SDW_OK);
  }
}
