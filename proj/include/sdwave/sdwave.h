/*
 * sdwave: spectral evolution of u_tt - Δu + Δ²u_t = 0.
 *
 * Plain C interface over opaque handles. Every function returns SDW_OK or a
 * negative error code; the message of the most recent failure on the calling
 * thread is available from sdw_last_error(). Handles are immutable once
 * created and may be shared between threads; each must be released with its
 * destroy function.
 */
#ifndef SDWAVE_SDWAVE_H
#define SDWAVE_SDWAVE_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(SDW_BUILDING)
#define SDW_API __attribute__((visibility("default")))
#else
#define SDW_API
#endif

enum sdw_status {
  SDW_OK = 0,
  SDW_ERROR_INVALID_ARGUMENT = -1,
  SDW_ERROR_DOMAIN = -2,
  SDW_ERROR_DIVERGENT_NORM = -3,
  SDW_ERROR_DIVERGENT_TAIL = -4,
  SDW_ERROR_MAX_DEPTH = -5,
  SDW_ERROR_STIFFNESS_GUARD = -6,
  SDW_ERROR_NON_POSITIVE_VALUE = -7,
  SDW_ERROR_INSUFFICIENT_POINTS = -8,
  SDW_ERROR_CONFIG = -9,
  SDW_ERROR_IO = -10,
  SDW_ERROR_NULL_POINTER = -11,
  SDW_ERROR_BUFFER_TOO_SMALL = -12,
  SDW_ERROR_OUT_OF_MEMORY = -13,
  SDW_ERROR_EXCEPTION = -100
};

SDW_API const char* sdw_version(void);
SDW_API const char* sdw_error_description(int code);
/* Empty string when the last call on this thread succeeded. */
SDW_API const char* sdw_last_error(void);

/* ---- multipliers ------------------------------------------------------ */

enum sdw_regime { SDW_REGIME_OSCILLATORY = 0, SDW_REGIME_CRITICAL = 1, SDW_REGIME_HYPERBOLIC = 2 };

typedef struct sdw_char_roots_t {
  double rho;
  int regime;    /* enum sdw_regime */
  int near_ring; /* evaluated by the ring series */
  double decay_part;
  double osc_freq;
  double lambda_plus; /* NaN in the oscillatory regime */
  double lambda_minus;
} sdw_char_roots_t;

SDW_API int sdw_char_roots(double rho, sdw_char_roots_t* out);
SDW_API const char* sdw_regime_name(int regime);
SDW_API int sdw_propagators(double t, double rho, double* e0, double* e1);
SDW_API int sdw_eval_state(double t, double rho, double a, double b, double* u_hat,
                           double* ut_hat);

/* ---- profiles --------------------------------------------------------- */

typedef struct sdw_profile_s* sdw_profile_t;

SDW_API int sdw_profile_gaussian(double sigma, double amplitude, sdw_profile_t* out);
SDW_API int sdw_profile_power_tail(double exponent, double amplitude, sdw_profile_t* out);
SDW_API int sdw_profile_shell(double center, double half_width, double amplitude,
                              sdw_profile_t* out);
SDW_API int sdw_profile_zero(sdw_profile_t* out);
SDW_API int sdw_profile_destroy(sdw_profile_t profile);
SDW_API int sdw_profile_eval(sdw_profile_t profile, double rho, double* out);
/* ‖D^ell f‖² in R^n. */
SDW_API int sdw_profile_sobolev(sdw_profile_t profile, double ell, int n, double rel_tol,
                                double* value, double* err_bound);

/* ---- scenarios -------------------------------------------------------- */

typedef struct sdw_scenario_s* sdw_scenario_t;

SDW_API int sdw_scenario_parse(const char* text, sdw_scenario_t* out);
SDW_API int sdw_scenario_load(const char* path, sdw_scenario_t* out);
SDW_API int sdw_scenario_destroy(sdw_scenario_t scenario);
/* Copy with rel_tol replaced. */
SDW_API int sdw_scenario_with_tol(sdw_scenario_t scenario, double rel_tol, sdw_scenario_t* out);
/*
 * Writes the canonical text form. With buf == NULL, or *len too small, *len
 * receives the required size including the terminating NUL (the latter case
 * returns SDW_ERROR_BUFFER_TOO_SMALL).
 */
SDW_API int sdw_scenario_serialize(sdw_scenario_t scenario, char* buf, size_t* len);

/* ---- energy ----------------------------------------------------------- */

typedef struct sdw_energy_report_t {
  double t;
  double e_low;
  double e_mid;
  double e_high;
  double e_total;
  double err_bound;
  int n;
  int reliable;
} sdw_energy_report_t;

SDW_API int sdw_energy_at(sdw_scenario_t scenario, double t, sdw_energy_report_t* out);

typedef struct sdw_series_s* sdw_series_t;

/* Energy on the scenario's geometric grid; the output does not depend on
 * the thread count. */
SDW_API int sdw_series_compute(sdw_scenario_t scenario, unsigned threads, sdw_series_t* out);
SDW_API int sdw_series_destroy(sdw_series_t series);
SDW_API int sdw_series_size(sdw_series_t series, size_t* out);
SDW_API int sdw_series_get(sdw_series_t series, size_t index, sdw_energy_report_t* out);
/* 1 when every report is reliable. */
SDW_API int sdw_series_reliable(sdw_series_t series, int* out);
/* CSV text, same buffer protocol as sdw_scenario_serialize. */
SDW_API int sdw_series_csv(sdw_series_t series, char* buf, size_t* len);

/* ---- analysis --------------------------------------------------------- */

typedef struct sdw_rate_fit_t {
  double slope;
  double intercept;
  double rmse;
  double t_min;
  double t_max;
  size_t points;
} sdw_rate_fit_t;

SDW_API int sdw_fit_rate(const double* t, const double* value, size_t count, double t_min,
                         double t_max, sdw_rate_fit_t* out);
/* Fit of the scenario's fit_target column over its fit_window. */
SDW_API int sdw_series_fit(sdw_series_t series, sdw_rate_fit_t* out);
SDW_API int sdw_kernel_low_norm(int n, double m, double t, double* out);
SDW_API int sdw_kernel_sup(double m, double t, double* out);

/* ---- verification ----------------------------------------------------- */

enum sdw_check_status { SDW_CHECK_PASS = 0, SDW_CHECK_FAIL = 1, SDW_CHECK_SKIP = 2 };
enum sdw_relation { SDW_WITHIN = 0, SDW_AT_MOST = 1, SDW_AT_LEAST = 2 };

typedef struct sdw_check_t {
  const char* suite;
  const char* check;
  int status;   /* enum sdw_check_status */
  int relation; /* enum sdw_relation */
  double measured;
  double expected;
  double tol;
  const char* note; /* may be empty */
} sdw_check_t;

/* The pointed-to strings live only for the duration of the callback. */
typedef void (*sdw_check_callback)(const sdw_check_t* check, void* user);

SDW_API size_t sdw_suite_count(void);
SDW_API const char* sdw_suite_name(size_t index);
/* *passed is 1 when no check failed. */
SDW_API int sdw_verify(const char* suite, unsigned threads, sdw_check_callback callback,
                       void* user, int* passed);

#ifdef __cplusplus
}
#endif

#endif /* SDWAVE_SDWAVE_H */
