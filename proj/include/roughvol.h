/* roughvol — rough-volatility analysis toolkit, C API.
 *
 * All functions return rv_status; outputs go through out-parameters. Handles
 * are opaque and freed with the matching *_free call. On failure the handle
 * outputs are left untouched and rv_last_error() returns a message for the
 * calling thread.
 */
#ifndef ROUGHVOL_H
#define ROUGHVOL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RV_API __declspec(dllexport)
#else
#define RV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rv_status {
  RV_OK = 0,
  RV_ERR_INVALID_ARG = 1,
  RV_ERR_DATA = 2,
  RV_ERR_NUMERIC = 3,
  RV_ERR_IO = 4
} rv_status;

typedef enum rv_units { RV_UNITS_VOL = 0, RV_UNITS_VAR = 1, RV_UNITS_LOGVAR = 2 } rv_units;

RV_API const char* rv_version(void);
RV_API const char* rv_last_error(void);
RV_API void rv_string_free(char* s);

/* ------------------------------------------------------------------------ */
/* Volatility series                                                         */
/* ------------------------------------------------------------------------ */

typedef struct rv_series rv_series;

RV_API rv_status rv_series_from_values(const double* values, size_t n, rv_units units,
                                       const char* label, rv_series** out);
/* format: "generic-csv" (date,value header) or "oxford-man-csv" (ISO date
 * first column, "<ASSET>.<estimator>" value columns). column selects the
 * asset column for oxford-man. date_min/date_max are inclusive ISO bounds,
 * NULL for unbounded. dropped counts rows removed for missing or nonpositive
 * values. */
RV_API rv_status rv_series_load_csv(const char* path, const char* format, const char* column,
                                    rv_units units, const char* date_min, const char* date_max,
                                    rv_series** out, size_t* dropped);
RV_API rv_status rv_series_save_csv(const rv_series* s, const char* path);
RV_API size_t rv_series_len(const rv_series* s);
RV_API rv_units rv_series_units(const rv_series* s);
RV_API const double* rv_series_values(const rv_series* s);
RV_API const char* rv_series_date(const rv_series* s, size_t i);
RV_API const char* rv_series_label(const rv_series* s);
RV_API int rv_series_has_gaps(const rv_series* s);
RV_API rv_status rv_series_slice(const rv_series* s, size_t begin, size_t end, rv_series** out);
RV_API void rv_series_free(rv_series* s);

/* ------------------------------------------------------------------------ */
/* Fractional process simulation                                             */
/* ------------------------------------------------------------------------ */

typedef struct rv_path rv_path;

RV_API rv_status rv_fbm_simulate(double hurst, size_t n_points, double dt, uint64_t seed,
                                 rv_path** out);
RV_API rv_status rv_fou_simulate(double hurst, size_t n_points, double dt, uint64_t seed,
                                 double nu, double alpha, double mean_level, double x0,
                                 rv_path** out);
RV_API size_t rv_path_len(const rv_path* p);
RV_API const double* rv_path_times(const rv_path* p);
RV_API const double* rv_path_values(const rv_path* p);
RV_API rv_status rv_path_save_csv(const rv_path* p, const char* path);
RV_API rv_status rv_path_save_binary(const rv_path* p, const char* path);
RV_API rv_status rv_path_load_binary(const char* path, rv_path** out);
RV_API void rv_path_free(rv_path* p);

/* Stationary fOU autocovariance via the spectral integral (any H in (0,1)). */
RV_API rv_status rv_fou_autocov(double hurst, double nu, double alpha, double lag, double* out);
/* Closed form, H > 1/2 only (cross-check route). */
RV_API rv_status rv_fou_autocov_closed_form(double hurst, double nu, double alpha, double lag,
                                            double* out);
RV_API rv_status rv_fou_stationary_variance(double hurst, double nu, double alpha, double* out);
/* E[sigma_{t+lag} sigma_t] for sigma = exp(fOU); small_alpha_approx != 0
 * selects exp{2E+2Var} exp{-nu^2 lag^{2H}/2}. */
RV_API rv_status rv_lognormal_vol_cov(double hurst, double nu, double alpha, double mean_level,
                                      double lag, int small_alpha_approx, double* out);

/* ------------------------------------------------------------------------ */
/* Scaling analysis                                                          */
/* ------------------------------------------------------------------------ */

typedef struct rv_scaling_report rv_scaling_report;

RV_API rv_status rv_m_q_delta(const rv_series* s, double q, int delta, double* out);
/* NULL grids select the defaults (q in {0.5,1,1.5,2,3}, delta 1..30). */
RV_API rv_status rv_fit_scaling(const rv_series* s, const double* q_grid, size_t nq,
                                const int* delta_grid, size_t nd, rv_scaling_report** out);
RV_API double rv_scaling_hurst(const rv_scaling_report* r);
RV_API double rv_scaling_nu(const rv_scaling_report* r);
RV_API size_t rv_scaling_nq(const rv_scaling_report* r);
RV_API rv_status rv_scaling_zeta(const rv_scaling_report* r, size_t q_index, double* zeta,
                                 double* stderr_out);
RV_API rv_status rv_scaling_to_json(const rv_scaling_report* r, char** json);
RV_API rv_status rv_scaling_write_csv(const rv_scaling_report* r, const char* path);
RV_API void rv_scaling_free(rv_scaling_report* r);

RV_API rv_status rv_increment_moments(const rv_series* s, int delta, double* mean,
                                      double* variance, double* skewness,
                                      double* excess_kurtosis);
/* out must hold n_segments report handles. */
RV_API rv_status rv_split_reestimate(const rv_series* s, int n_segments,
                                     rv_scaling_report** out);

/* ------------------------------------------------------------------------ */
/* Covariance structure and smoothing bias                                   */
/* ------------------------------------------------------------------------ */

/* transform: 0 = log vol, 1 = vol level. center = 0 gives the raw product
 * moment instead of the centered covariance. */
RV_API rv_status rv_empirical_autocov(const rv_series* s, const int* lags, size_t n,
                                      int transform, int center, double* out);
RV_API rv_status rv_fsv_m2_curve(double hurst, double nu, double alpha, const double* lags,
                                 size_t n, double* out);
RV_API rv_status rv_smoothing_bias_f(double hurst, double theta, double* out);
RV_API rv_status rv_smoothed_m2(double hurst, double alpha_amp, double window,
                                const double* lags, size_t n, double* out);
/* Log-log regression of the smoothed structure function over integer lags
 * lag_min..lag_max (the window-bias experiment). */
RV_API rv_status rv_smoothing_regression(double hurst, double alpha_amp, double window,
                                         int lag_min, int lag_max, double* alpha_hat,
                                         double* hurst_hat);

/* ------------------------------------------------------------------------ */
/* Forecasting                                                               */
/* ------------------------------------------------------------------------ */

RV_API rv_status rv_rfsv_truncation_error(double hurst, double r, double* out);
RV_API rv_status rv_rfsv_truncation_r(double hurst, double eps_target, double* out);
RV_API rv_status rv_rfsv_forecast_logvar(const rv_series* history, double horizon, double hurst,
                                         double truncation_r, double* out);
RV_API rv_status rv_rfsv_forecast_var(const rv_series* history, double horizon, double hurst,
                                      double nu, double truncation_r, double* out);

typedef struct rv_pratio rv_pratio;

/* ar_orders may be NULL (defaults to {5,10}). variance_targets != 0 evaluates
 * on variance levels instead of log-variance. */
RV_API rv_status rv_evaluate_p_ratio(const rv_series* s, const int* horizons, size_t nh,
                                     const int* ar_orders, size_t nar, int variance_targets,
                                     size_t training_window, rv_pratio** out);
RV_API rv_status rv_pratio_value(const rv_pratio* p, const char* model, int horizon,
                                 double* out);
RV_API double rv_pratio_hurst(const rv_pratio* p);
RV_API rv_status rv_pratio_to_json(const rv_pratio* p, char** json);
RV_API void rv_pratio_free(rv_pratio* p);

/* ------------------------------------------------------------------------ */
/* Long-memory diagnostics                                                   */
/* ------------------------------------------------------------------------ */

/* t_grid NULL selects 1..60. points_* may be NULL; otherwise they receive the
 * regression points (caller array of size *n_points, which on input holds the
 * capacity and on output the count). */
RV_API rv_status rv_vt_scaling(const rv_series* s, const int* t_grid, size_t nt, int min_blocks,
                               double* slope, double* intercept, double* points_log_t,
                               double* points_log_v, size_t* n_points);
/* Fractional differencing of the log-volatility; returns a logvar-units
 * series of length len(s) - truncation. */
RV_API rv_status rv_frac_diff(const rv_series* s, double d, size_t truncation, rv_series** out,
                              double* tail_mass);
RV_API rv_status rv_acf_with_bands(const rv_series* s, int max_lag, double* acf,
                                   double* bartlett_band, double* inside_fraction);

/* ------------------------------------------------------------------------ */
/* Hawkes microstructure simulation                                          */
/* ------------------------------------------------------------------------ */

typedef struct rv_events rv_events;

/* kernel: "zero", "exponential" (a e^{-b t}, decay = b) or "power-law"
 * (a (t+t0)^{-beta}, decay = beta, cutoff = t0). */
RV_API rv_status rv_hawkes_simulate(double mu, const char* kernel, double amplitude,
                                    double decay, double cutoff, double horizon, uint64_t seed,
                                    rv_events** out);
RV_API rv_status rv_hawkes_l1_norm(const char* kernel, double amplitude, double decay,
                                   double cutoff, double* out);
RV_API size_t rv_events_len(const rv_events* e);
RV_API const double* rv_events_times(const rv_events* e);
RV_API rv_status rv_events_save_csv(const rv_events* e, const char* path);
RV_API rv_status rv_coarse_grain_to_vol(const rv_events* e, double bin_width, rv_series** out,
                                        size_t* floored_bins);
RV_API void rv_events_free(rv_events* e);

/* ------------------------------------------------------------------------ */
/* Simulation study                                                          */
/* ------------------------------------------------------------------------ */

typedef struct rv_study rv_study;

RV_API rv_status rv_study_run(double hurst, double nu, double alpha, double mean_level, int days,
                              int steps_per_day, uint64_t seed, rv_study** out);
/* which: 0 spot, 1 short window, 2 long window. */
RV_API rv_status rv_study_hurst(const rv_study* st, int which, double* out);
RV_API rv_status rv_study_report(const rv_study* st, int which, rv_scaling_report** out);
RV_API rv_status rv_study_to_json(const rv_study* st, char** json);
RV_API void rv_study_free(rv_study* st);

#ifdef __cplusplus
}
#endif

#endif /* ROUGHVOL_H */
