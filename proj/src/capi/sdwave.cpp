#include "sdwave/sdwave.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <limits>
#include <new>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "energy.hpp"
#include "errors.hpp"
#include "multipliers.hpp"
#include "profiles.hpp"
#include "scenario.hpp"
#include "verify.hpp"

struct sdw_profile_s {
  sdwave::SpectralProfile profile;
};

struct sdw_scenario_s {
  sdwave::Scenario scenario;
};

struct sdw_series_s {
  sdwave::Scenario scenario;
  std::vector<sdwave::EnergyReport> reports;
};

namespace {

thread_local std::string last_error;

int status_of(sdwave::ErrorCode code) {
  using sdwave::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return SDW_ERROR_INVALID_ARGUMENT;
    case ErrorCode::Domain: return SDW_ERROR_DOMAIN;
    case ErrorCode::DivergentNorm: return SDW_ERROR_DIVERGENT_NORM;
    case ErrorCode::DivergentTail: return SDW_ERROR_DIVERGENT_TAIL;
    case ErrorCode::MaxDepthExceeded: return SDW_ERROR_MAX_DEPTH;
    case ErrorCode::StiffnessGuard: return SDW_ERROR_STIFFNESS_GUARD;
    case ErrorCode::NonPositiveValue: return SDW_ERROR_NON_POSITIVE_VALUE;
    case ErrorCode::InsufficientPoints: return SDW_ERROR_INSUFFICIENT_POINTS;
    case ErrorCode::Config: return SDW_ERROR_CONFIG;
    case ErrorCode::Io: return SDW_ERROR_IO;
  }
  return SDW_ERROR_EXCEPTION;
}

struct NullPointer {};

template <class T>
T& deref(T* p) {
  if (p == nullptr) throw NullPointer{};
  return *p;
}

template <class F>
int guard(F&& body) noexcept {
  try {
    body();
    last_error.clear();
    return SDW_OK;
  } catch (const NullPointer&) {
    last_error = "null pointer argument";
    return SDW_ERROR_NULL_POINTER;
  } catch (const sdwave::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SDW_ERROR_OUT_OF_MEMORY;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SDW_ERROR_EXCEPTION;
  } catch (...) {
    last_error = "unknown exception";
    return SDW_ERROR_EXCEPTION;
  }
}

int write_text(const std::string& text, char* buf, size_t* len) {
  const size_t need = text.size() + 1;
  if (len == nullptr) {
    last_error = "null length pointer";
    return SDW_ERROR_NULL_POINTER;
  }
  const size_t have = *len;
  *len = need;
  if (buf == nullptr) {
    last_error.clear();
    return SDW_OK;
  }
  if (have < need) {
    last_error = "buffer too small: need " + std::to_string(need) + " bytes";
    return SDW_ERROR_BUFFER_TOO_SMALL;
  }
  std::memcpy(buf, text.c_str(), need);
  last_error.clear();
  return SDW_OK;
}

sdw_energy_report_t to_c(const sdwave::EnergyReport& r) {
  return {r.t, r.e_low, r.e_mid, r.e_high, r.e_total, r.err_bound, r.n, r.reliable ? 1 : 0};
}

sdw_rate_fit_t to_c(const sdwave::RateFit& f) {
  return {f.slope, f.intercept, f.rmse, f.t_min, f.t_max, f.points};
}

template <class Make>
int make_profile(sdw_profile_t* out, Make make) {
  return guard([&] {
    auto& slot = deref(out);
    slot = nullptr;
    slot = new sdw_profile_s{make()};
  });
}

}  // namespace

extern "C" {

const char* sdw_version(void) { return "1.0.0"; }

const char* sdw_error_description(int code) {
  switch (code) {
    case SDW_OK: return "ok";
    case SDW_ERROR_INVALID_ARGUMENT: return "invalid argument";
    case SDW_ERROR_DOMAIN: return "argument outside the domain";
    case SDW_ERROR_DIVERGENT_NORM: return "norm diverges";
    case SDW_ERROR_DIVERGENT_TAIL: return "tail integral diverges";
    case SDW_ERROR_MAX_DEPTH: return "iteration or refinement limit exceeded";
    case SDW_ERROR_STIFFNESS_GUARD: return "stiffness guard exceeded";
    case SDW_ERROR_NON_POSITIVE_VALUE: return "non-positive value in fit window";
    case SDW_ERROR_INSUFFICIENT_POINTS: return "too few points in fit window";
    case SDW_ERROR_CONFIG: return "invalid scenario configuration";
    case SDW_ERROR_IO: return "i/o failure";
    case SDW_ERROR_NULL_POINTER: return "null pointer argument";
    case SDW_ERROR_BUFFER_TOO_SMALL: return "buffer too small";
    case SDW_ERROR_OUT_OF_MEMORY: return "out of memory";
    case SDW_ERROR_EXCEPTION: return "internal error";
    default: return "unknown error code";
  }
}

const char* sdw_last_error(void) { return last_error.c_str(); }

int sdw_char_roots(double rho, sdw_char_roots_t* out) {
  return guard([&] {
    auto& o = deref(out);
    const auto r = sdwave::char_roots(rho);
    o.rho = r.rho;
    o.regime = static_cast<int>(r.regime);
    o.near_ring = sdwave::classify_regime(rho).near_ring ? 1 : 0;
    o.decay_part = r.decay_part;
    o.osc_freq = r.osc_freq;
    o.lambda_plus = r.lambda_plus;
    o.lambda_minus = r.lambda_minus;
  });
}

const char* sdw_regime_name(int regime) {
  if (regime < 0 || regime > 2) return "?";
  return sdwave::regime_name(static_cast<sdwave::Regime>(regime));
}

int sdw_propagators(double t, double rho, double* e0, double* e1) {
  return guard([&] {
    auto& o0 = deref(e0);
    auto& o1 = deref(e1);
    const auto p = sdwave::propagators(t, rho);
    o0 = p.e0;
    o1 = p.e1;
  });
}

int sdw_eval_state(double t, double rho, double a, double b, double* u_hat, double* ut_hat) {
  return guard([&] {
    auto& u = deref(u_hat);
    auto& ut = deref(ut_hat);
    const auto s = sdwave::eval_state(t, rho, a, b);
    u = s.u_hat;
    ut = s.ut_hat;
  });
}

int sdw_profile_gaussian(double sigma, double amplitude, sdw_profile_t* out) {
  return make_profile(out, [&] { return sdwave::SpectralProfile::gaussian(sigma, amplitude); });
}

int sdw_profile_power_tail(double exponent, double amplitude, sdw_profile_t* out) {
  return make_profile(out,
                      [&] { return sdwave::SpectralProfile::power_tail(exponent, amplitude); });
}

int sdw_profile_shell(double center, double half_width, double amplitude, sdw_profile_t* out) {
  return make_profile(
      out, [&] { return sdwave::SpectralProfile::shell(center, half_width, amplitude); });
}

int sdw_profile_zero(sdw_profile_t* out) {
  return make_profile(out, [] { return sdwave::SpectralProfile::zero(); });
}

int sdw_profile_destroy(sdw_profile_t profile) {
  delete profile;
  return SDW_OK;
}

int sdw_profile_eval(sdw_profile_t profile, double rho, double* out) {
  return guard([&] { deref(out) = deref(profile).profile.eval(rho); });
}

int sdw_profile_sobolev(sdw_profile_t profile, double ell, int n, double rel_tol, double* value,
                        double* err_bound) {
  return guard([&] {
    auto& v = deref(value);
    auto& e = deref(err_bound);
    const auto r = sdwave::sobolev_norm_sq(deref(profile).profile, ell, n, rel_tol);
    v = r.value;
    e = r.err_bound;
  });
}

int sdw_scenario_parse(const char* text, sdw_scenario_t* out) {
  return guard([&] {
    auto& slot = deref(out);
    slot = nullptr;
    const char* s = &deref(text);
    slot = new sdw_scenario_s{sdwave::parse_scenario(s)};
  });
}

int sdw_scenario_load(const char* path, sdw_scenario_t* out) {
  return guard([&] {
    auto& slot = deref(out);
    slot = nullptr;
    const char* p = &deref(path);
    slot = new sdw_scenario_s{sdwave::load_scenario(p)};
  });
}

int sdw_scenario_destroy(sdw_scenario_t scenario) {
  delete scenario;
  return SDW_OK;
}

int sdw_scenario_with_tol(sdw_scenario_t scenario, double rel_tol, sdw_scenario_t* out) {
  return guard([&] {
    auto& slot = deref(out);
    slot = nullptr;
    if (!(rel_tol >= sdwave::kMinRelTol && rel_tol <= sdwave::kMaxRelTol))
      sdwave::fail(sdwave::ErrorCode::InvalidArgument, "rel_tol must lie in [1e-13, 1e-3]");
    auto copy = deref(scenario).scenario;
    copy.rel_tol = rel_tol;
    slot = new sdw_scenario_s{copy};
  });
}

int sdw_scenario_serialize(sdw_scenario_t scenario, char* buf, size_t* len) {
  std::string text;
  const int rc = guard([&] { text = sdwave::serialize_scenario(deref(scenario).scenario); });
  return rc != SDW_OK ? rc : write_text(text, buf, len);
}

int sdw_energy_at(sdw_scenario_t scenario, double t, sdw_energy_report_t* out) {
  return guard([&] {
    auto& o = deref(out);
    const auto& sc = deref(scenario).scenario;
    o = to_c(sdwave::energy_report(t, sc.u0, sc.u1, sc.n, sc.rel_tol, sc.bands));
  });
}

int sdw_series_compute(sdw_scenario_t scenario, unsigned threads, sdw_series_t* out) {
  return guard([&] {
    auto& slot = deref(out);
    slot = nullptr;
    const auto& sc = deref(scenario).scenario;
    auto reports = sdwave::energy_series(sc.u0, sc.u1, sc.n, sdwave::scenario_grid(sc),
                                         sc.rel_tol, sc.bands, threads);
    slot = new sdw_series_s{sc, std::move(reports)};
  });
}

int sdw_series_destroy(sdw_series_t series) {
  delete series;
  return SDW_OK;
}

int sdw_series_size(sdw_series_t series, size_t* out) {
  return guard([&] { deref(out) = deref(series).reports.size(); });
}

int sdw_series_get(sdw_series_t series, size_t index, sdw_energy_report_t* out) {
  return guard([&] {
    auto& o = deref(out);
    const auto& rs = deref(series).reports;
    if (index >= rs.size())
      sdwave::fail(sdwave::ErrorCode::InvalidArgument, "series index out of range");
    o = to_c(rs[index]);
  });
}

int sdw_series_reliable(sdw_series_t series, int* out) {
  return guard([&] {
    auto& o = deref(out);
    o = 1;
    for (const auto& r : deref(series).reports) o = o && r.reliable;
  });
}

int sdw_series_csv(sdw_series_t series, char* buf, size_t* len) {
  std::string text;
  const int rc = guard([&] { text = sdwave::series_csv(deref(series).reports); });
  return rc != SDW_OK ? rc : write_text(text, buf, len);
}

int sdw_fit_rate(const double* t, const double* value, size_t count, double t_min, double t_max,
                 sdw_rate_fit_t* out) {
  return guard([&] {
    auto& o = deref(out);
    if (count > 0) {
      deref(t);
      deref(value);
    }
    o = to_c(sdwave::fit_rate({t, count}, {value, count}, t_min, t_max));
  });
}

int sdw_series_fit(sdw_series_t series, sdw_rate_fit_t* out) {
  return guard([&] {
    auto& o = deref(out);
    const auto& s = deref(series);
    std::vector<double> ts;
    for (const auto& r : s.reports) ts.push_back(r.t);
    const auto values = sdwave::fit_column(s.reports, s.scenario.fit_target);
    o = to_c(sdwave::fit_rate(ts, values, s.scenario.fit_min, s.scenario.fit_max));
  });
}

int sdw_kernel_low_norm(int n, double m, double t, double* out) {
  return guard([&] { deref(out) = sdwave::kernel_low_norm(n, m, t); });
}

int sdw_kernel_sup(double m, double t, double* out) {
  return guard([&] { deref(out) = sdwave::kernel_sup(m, t); });
}

size_t sdw_suite_count(void) { return sdwave::suite_names().size(); }

const char* sdw_suite_name(size_t index) {
  const auto& names = sdwave::suite_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

int sdw_verify(const char* suite, unsigned threads, sdw_check_callback callback, void* user,
               int* passed) {
  return guard([&] {
    auto& ok = deref(passed);
    const char* name = &deref(suite);
    const sdwave::CheckSink sink = [&](const sdwave::CheckResult& r) {
      if (callback == nullptr) return;
      sdw_check_t c;
      c.suite = r.suite.c_str();
      c.check = r.check.c_str();
      c.status = static_cast<int>(r.status);
      c.relation = static_cast<int>(r.relation);
      c.measured = r.measured;
      c.expected = r.expected;
      c.tol = r.tol;
      c.note = r.note.c_str();
      callback(&c, user);
    };
    ok = sdwave::run_suite(name, sink, threads) ? 1 : 0;
  });
}

}  // extern "C"
