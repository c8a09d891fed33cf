#include "roughvol.h"

#include <cstring>
#include <string>

#include "core/covstruct.hpp"
#include "core/forecast.hpp"
#include "core/fracproc.hpp"
#include "core/memdiag.hpp"
#include "core/microsim.hpp"
#include "core/scaling.hpp"
#include "core/series.hpp"
#include "core/study.hpp"

// Opaque handle definitions; each wraps the core value type.
struct rv_series {
  rvol::VolSeries v;
};
struct rv_path {
  rvol::GaussianPath v;
};
struct rv_scaling_report {
  rvol::ScalingReport v;
};
struct rv_pratio {
  rvol::PRatioResult v;
};
struct rv_events {
  rvol::EventStream v;
};
struct rv_study {
  rvol::StudyReport v;
};

namespace {

thread_local std::string g_last_error;

rv_status status_of(const rvol::Error& e) {
  switch (e.kind()) {
    case rvol::ErrorKind::invalid_arg: return RV_ERR_INVALID_ARG;
    case rvol::ErrorKind::data: return RV_ERR_DATA;
    case rvol::ErrorKind::numeric: return RV_ERR_NUMERIC;
    case rvol::ErrorKind::io: return RV_ERR_IO;
  }
  return RV_ERR_INVALID_ARG;
}

template <typename Fn>
rv_status guarded(Fn&& fn) {
  try {
    fn();
    return RV_OK;
  } catch (const rvol::Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RV_ERR_NUMERIC;
  } catch (...) {
    g_last_error = "unknown error";
    return RV_ERR_NUMERIC;
  }
}

rvol::Units to_units(rv_units u) {
  switch (u) {
    case RV_UNITS_VOL: return rvol::Units::vol;
    case RV_UNITS_VAR: return rvol::Units::var;
    case RV_UNITS_LOGVAR: return rvol::Units::logvar;
  }
  return rvol::Units::var;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

rvol::HawkesKernel kernel_of(const char* name) {
  const std::string k = name ? name : "";
  if (k == "zero") return rvol::HawkesKernel::zero;
  if (k == "exponential") return rvol::HawkesKernel::exponential;
  if (k == "power-law" || k == "powerlaw") return rvol::HawkesKernel::power_law;
  rvol::fail_invalid("unknown Hawkes kernel: " + k);
}

}  // namespace

extern "C" {

const char* rv_version(void) { return "0.1.0"; }
const char* rv_last_error(void) { return g_last_error.c_str(); }
void rv_string_free(char* s) { delete[] s; }

/* -------------------------------- series --------------------------------- */

rv_status rv_series_from_values(const double* values, size_t n, rv_units units,
                                const char* label, rv_series** out) {
  return guarded([&] {
    rvol::require(values != nullptr && out != nullptr && n > 0, rvol::ErrorKind::invalid_arg,
                  "rv_series_from_values: null argument");
    auto s = rvol::make_series(std::vector<double>(values, values + n), to_units(units),
                               label ? label : "");
    *out = new rv_series{std::move(s)};
  });
}

rv_status rv_series_load_csv(const char* path, const char* format, const char* column,
                             rv_units units, const char* date_min, const char* date_max,
                             rv_series** out, size_t* dropped) {
  return guarded([&] {
    rvol::require(path != nullptr && out != nullptr, rvol::ErrorKind::invalid_arg,
                  "rv_series_load_csv: null argument");
    rvol::IngestOptions opts;
    if (format) opts.format = format;
    if (column) opts.column = column;
    opts.units = to_units(units);
    if (date_min) opts.date_min = date_min;
    if (date_max) opts.date_max = date_max;
    auto res = rvol::ingest_csv(path, opts);
    if (!res.row_errors.empty()) {
      std::string msg = path;
      msg += ": unparseable rows: ";
      for (std::size_t i = 0; i < res.row_errors.size() && i < 5; ++i)
        msg += res.row_errors[i] + "; ";
      rvol::fail_data(msg);
    }
    if (dropped) *dropped = res.dropped_rows;
    *out = new rv_series{std::move(res.series)};
  });
}

rv_status rv_series_save_csv(const rv_series* s, const char* path) {
  return guarded([&] {
    rvol::require(s && path, rvol::ErrorKind::invalid_arg, "rv_series_save_csv: null argument");
    rvol::save_series_csv(s->v, path);
  });
}

size_t rv_series_len(const rv_series* s) { return s ? s->v.size() : 0; }
rv_units rv_series_units(const rv_series* s) {
  if (!s) return RV_UNITS_VAR;
  switch (s->v.units) {
    case rvol::Units::vol: return RV_UNITS_VOL;
    case rvol::Units::var: return RV_UNITS_VAR;
    case rvol::Units::logvar: return RV_UNITS_LOGVAR;
  }
  return RV_UNITS_VAR;
}
const double* rv_series_values(const rv_series* s) { return s ? s->v.values.data() : nullptr; }
const char* rv_series_date(const rv_series* s, size_t i) {
  return (s && i < s->v.dates.size()) ? s->v.dates[i].c_str() : nullptr;
}
const char* rv_series_label(const rv_series* s) { return s ? s->v.label.c_str() : nullptr; }
int rv_series_has_gaps(const rv_series* s) { return s && s->v.has_gaps ? 1 : 0; }

rv_status rv_series_slice(const rv_series* s, size_t begin, size_t end, rv_series** out) {
  return guarded([&] {
    rvol::require(s && out, rvol::ErrorKind::invalid_arg, "rv_series_slice: null argument");
    *out = new rv_series{s->v.slice(begin, end)};
  });
}

void rv_series_free(rv_series* s) { delete s; }

/* --------------------------------- paths --------------------------------- */

rv_status rv_fbm_simulate(double hurst, size_t n_points, double dt, uint64_t seed,
                          rv_path** out) {
  return guarded([&] {
    rvol::require(out != nullptr, rvol::ErrorKind::invalid_arg, "rv_fbm_simulate: null out");
    rvol::FbmParams p{hurst, n_points, dt, seed};
    *out = new rv_path{rvol::fbm_simulate(p)};
  });
}

rv_status rv_fou_simulate(double hurst, size_t n_points, double dt, uint64_t seed, double nu,
                          double alpha, double mean_level, double x0, rv_path** out) {
  return guarded([&] {
    rvol::require(out != nullptr, rvol::ErrorKind::invalid_arg, "rv_fou_simulate: null out");
    rvol::FouParams p;
    p.fbm = {hurst, n_points, dt, seed};
    p.nu = nu;
    p.alpha = alpha;
    p.mean_level = mean_level;
    p.x0 = x0;
    *out = new rv_path{rvol::fou_simulate(p)};
  });
}

size_t rv_path_len(const rv_path* p) { return p ? p->v.values.size() : 0; }
const double* rv_path_times(const rv_path* p) { return p ? p->v.times.data() : nullptr; }
const double* rv_path_values(const rv_path* p) { return p ? p->v.values.data() : nullptr; }

rv_status rv_path_save_csv(const rv_path* p, const char* path) {
  return guarded([&] {
    rvol::require(p && path, rvol::ErrorKind::invalid_arg, "rv_path_save_csv: null argument");
    rvol::save_path_csv(p->v, path);
  });
}
rv_status rv_path_save_binary(const rv_path* p, const char* path) {
  return guarded([&] {
    rvol::require(p && path, rvol::ErrorKind::invalid_arg, "rv_path_save_binary: null argument");
    rvol::save_path_binary(p->v, path);
  });
}
rv_status rv_path_load_binary(const char* path, rv_path** out) {
  return guarded([&] {
    rvol::require(path && out, rvol::ErrorKind::invalid_arg, "rv_path_load_binary: null argument");
    *out = new rv_path{rvol::load_path_binary(path)};
  });
}
void rv_path_free(rv_path* p) { delete p; }

rv_status rv_fou_autocov(double hurst, double nu, double alpha, double lag, double* out) {
  return guarded([&] {
    rvol::require(out != nullptr, rvol::ErrorKind::invalid_arg, "rv_fou_autocov: null out");
    *out = rvol::fou_autocov(hurst, nu, alpha, lag);
  });
}
rv_status rv_fou_autocov_closed_form(double hurst, double nu, double alpha, double lag,
                                     double* out) {
  return guarded([&] {
    rvol::require(out != nullptr, rvol::ErrorKind::invalid_arg,
                  "rv_fou_autocov_closed_form: null out");
    *out = rvol::fou_autocov_closed_form(hurst, nu, alpha, lag);
  });
}
rv_status rv_fou_stationary_variance(double hurst, double nu, double alpha, double* out) {
  return guarded([&] {
    rvol::require(out != nullptr, rvol::ErrorKind::invalid_arg,
                  "rv_fou_stationary_variance: null out");
    *out = rvol::fou_stationary_variance(hurst, nu, alpha);
  });
}
rv_status rv_lognormal_vol_cov(double hurst, double nu, double alpha, double mean_level,
                               double lag, int small_alpha_approx, double* out) {
  return guarded([&] {
    rvol::require(out != nullptr, rvol::ErrorKind::invalid_arg, "rv_lognormal_vol_cov: null out");
    *out = rvol::lognormal_vol_cov(hurst, nu, alpha, mean_level, lag, small_alpha_approx != 0);
  });
}

/* -------------------------------- scaling -------------------------------- */

rv_status rv_m_q_delta(const rv_series* s, double q, int delta, double* out) {
  return guarded([&] {
    rvol::require(s && out, rvol::ErrorKind::invalid_arg, "rv_m_q_delta: null argument");
    *out = rvol::m_q_delta(s->v, q, delta);
  });
}

rv_status rv_fit_scaling(const rv_series* s, const double* q_grid, size_t nq,
                         const int* delta_grid, size_t nd, rv_scaling_report** out) {
  return guarded([&] {
    rvol::require(s && out, rvol::ErrorKind::invalid_arg, "rv_fit_scaling: null argument");
    const auto qs = q_grid ? std::vector<double>(q_grid, q_grid + nq) : rvol::default_q_grid();
    const auto ds =
        delta_grid ? std::vector<int>(delta_grid, delta_grid + nd) : rvol::default_delta_grid();
    *out = new rv_scaling_report{rvol::fit_scaling(s->v, qs, ds)};
  });
}

double rv_scaling_hurst(const rv_scaling_report* r) { return r ? r->v.hurst_hat : 0.0; }
double rv_scaling_nu(const rv_scaling_report* r) { return r ? r->v.nu_hat : 0.0; }
size_t rv_scaling_nq(const rv_scaling_report* r) { return r ? r->v.q_grid.size() : 0; }

rv_status rv_scaling_zeta(const rv_scaling_report* r, size_t q_index, double* zeta,
                          double* stderr_out) {
  return guarded([&] {
    rvol::require(r != nullptr && q_index < r->v.zeta.size(), rvol::ErrorKind::invalid_arg,
                  "rv_scaling_zeta: bad index");
    if (zeta) *zeta = r->v.zeta[q_index];
    if (stderr_out) *stderr_out = r->v.zeta_stderr[q_index];
  });
}

rv_status rv_scaling_to_json(const rv_scaling_report* r, char** json) {
  return guarded([&] {
    rvol::require(r && json, rvol::ErrorKind::invalid_arg, "rv_scaling_to_json: null argument");
    *json = dup_string(r->v.to_json());
  });
}

rv_status rv_scaling_write_csv(const rv_scaling_report* r, const char* path) {
  return guarded([&] {
    rvol::require(r && path, rvol::ErrorKind::invalid_arg, "rv_scaling_write_csv: null argument");
    r->v.write_csv(path);
  });
}

void rv_scaling_free(rv_scaling_report* r) { delete r; }

rv_status rv_increment_moments(const rv_series* s, int delta, double* mean, double* variance,
                               double* skewness, double* excess_kurtosis) {
  return guarded([&] {
    rvol::require(s != nullptr, rvol::ErrorKind::invalid_arg, "rv_increment_moments: null series");
    const auto m = rvol::increment_moments(s->v, delta);
    if (mean) *mean = m.stats.mean;
    if (variance) *variance = m.stats.variance;
    if (skewness) *skewness = m.stats.skewness;
    if (excess_kurtosis) *excess_kurtosis = m.stats.excess_kurtosis;
  });
}

rv_status rv_split_reestimate(const rv_series* s, int n_segments, rv_scaling_report** out) {
  return guarded([&] {
    rvol::require(s && out && n_segments >= 1, rvol::ErrorKind::invalid_arg,
                  "rv_split_reestimate: bad arguments");
    auto reps = rvol::split_reestimate(s->v, n_segments);
    for (int i = 0; i < n_segments; ++i) out[i] = new rv_scaling_report{std::move(reps[std::size_t(i)])};
  });
}

/* ------------------------------- covstruct ------------------------------- */

rv_status rv_empirical_autocov(const rv_series* s, const int* lags, size_t n, int transform,
                               int center, double* out) {
  return guarded([&] {
    rvol::require(s && lags && out && n > 0, rvol::ErrorKind::invalid_arg,
                  "rv_empirical_autocov: null argument");
    const auto v = rvol::empirical_autocov(
        s->v, std::vector<int>(lags, lags + n),
        transform == 0 ? rvol::CovTransform::log : rvol::CovTransform::level, center != 0);
    std::copy(v.begin(), v.end(), out);
  });
}

rv_status rv_fsv_m2_curve(double hurst, double nu, double alpha, const double* lags, size_t n,
                          double* out) {
  return guarded([&] {
    rvol::require(lags && out && n > 0, rvol::ErrorKind::invalid_arg,
                  "rv_fsv_m2_curve: null argument");
    const auto v = rvol::fsv_m2_curve(hurst, nu, alpha, std::vector<double>(lags, lags + n));
    std::copy(v.begin(), v.end(), out);
  });
}

rv_status rv_smoothing_bias_f(double hurst, double theta, double* out) {
  return guarded([&] {
    rvol::require(out != nullptr, rvol::ErrorKind::invalid_arg, "rv_smoothing_bias_f: null out");
    *out = rvol::smoothing_bias_f(hurst, theta);
  });
}

rv_status rv_smoothed_m2(double hurst, double alpha_amp, double window, const double* lags,
                         size_t n, double* out) {
  return guarded([&] {
    rvol::require(lags && out && n > 0, rvol::ErrorKind::invalid_arg,
                  "rv_smoothed_m2: null argument");
    rvol::SmoothingSpec spec;
    spec.hurst = hurst;
    spec.alpha_amp = alpha_amp;
    spec.window = window;
    spec.lags.assign(lags, lags + n);
    const auto v = rvol::smoothed_m2(spec);
    std::copy(v.begin(), v.end(), out);
  });
}

rv_status rv_smoothing_regression(double hurst, double alpha_amp, double window, int lag_min,
                                  int lag_max, double* alpha_hat, double* hurst_hat) {
  return guarded([&] {
    const auto r = rvol::smoothing_regression(hurst, alpha_amp, window, lag_min, lag_max);
    if (alpha_hat) *alpha_hat = r.alpha_hat;
    if (hurst_hat) *hurst_hat = r.hurst_hat;
  });
}

/* ------------------------------- forecasting ----------------------------- */

rv_status rv_rfsv_truncation_error(double hurst, double r, double* out) {
  return guarded([&] {
    rvol::require(out != nullptr, rvol::ErrorKind::invalid_arg,
                  "rv_rfsv_truncation_error: null out");
    *out = rvol::rfsv_truncation_error(hurst, r);
  });
}

rv_status rv_rfsv_truncation_r(double hurst, double eps_target, double* out) {
  return guarded([&] {
    rvol::require(out != nullptr, rvol::ErrorKind::invalid_arg, "rv_rfsv_truncation_r: null out");
    *out = rvol::rfsv_truncation_r(hurst, eps_target);
  });
}

rv_status rv_rfsv_forecast_logvar(const rv_series* history, double horizon, double hurst,
                                  double truncation_r, double* out) {
  return guarded([&] {
    rvol::require(history && out, rvol::ErrorKind::invalid_arg,
                  "rv_rfsv_forecast_logvar: null argument");
    *out = rvol::rfsv_forecast_logvar(history->v, horizon, hurst, truncation_r);
  });
}

rv_status rv_rfsv_forecast_var(const rv_series* history, double horizon, double hurst, double nu,
                               double truncation_r, double* out) {
  return guarded([&] {
    rvol::require(history && out, rvol::ErrorKind::invalid_arg,
                  "rv_rfsv_forecast_var: null argument");
    *out = rvol::rfsv_forecast_var(history->v, horizon, hurst, nu, truncation_r);
  });
}

rv_status rv_evaluate_p_ratio(const rv_series* s, const int* horizons, size_t nh,
                              const int* ar_orders, size_t nar, int variance_targets,
                              size_t training_window, rv_pratio** out) {
  return guarded([&] {
    rvol::require(s && horizons && out && nh > 0, rvol::ErrorKind::invalid_arg,
                  "rv_evaluate_p_ratio: null argument");
    rvol::PRatioOptions opts;
    opts.horizons.assign(horizons, horizons + nh);
    if (ar_orders && nar > 0) opts.ar_orders.assign(ar_orders, ar_orders + nar);
    opts.variance_targets = variance_targets != 0;
    if (training_window > 0) opts.training_window = training_window;
    *out = new rv_pratio{rvol::evaluate_p_ratio(s->v, opts)};
  });
}

rv_status rv_pratio_value(const rv_pratio* p, const char* model, int horizon, double* out) {
  return guarded([&] {
    rvol::require(p && model && out, rvol::ErrorKind::invalid_arg,
                  "rv_pratio_value: null argument");
    const auto mit = p->v.p.find(model);
    rvol::require(mit != p->v.p.end(), rvol::ErrorKind::invalid_arg,
                  std::string("rv_pratio_value: unknown model ") + model);
    const auto hit = mit->second.find(horizon);
    rvol::require(hit != mit->second.end(), rvol::ErrorKind::invalid_arg,
                  "rv_pratio_value: horizon not evaluated");
    *out = hit->second;
  });
}

double rv_pratio_hurst(const rv_pratio* p) { return p ? p->v.hurst_used : 0.0; }

rv_status rv_pratio_to_json(const rv_pratio* p, char** json) {
  return guarded([&] {
    rvol::require(p && json, rvol::ErrorKind::invalid_arg, "rv_pratio_to_json: null argument");
    *json = dup_string(p->v.to_json());
  });
}

void rv_pratio_free(rv_pratio* p) { delete p; }

/* -------------------------------- memdiag -------------------------------- */

rv_status rv_vt_scaling(const rv_series* s, const int* t_grid, size_t nt, int min_blocks,
                        double* slope, double* intercept, double* points_log_t,
                        double* points_log_v, size_t* n_points) {
  return guarded([&] {
    rvol::require(s != nullptr, rvol::ErrorKind::invalid_arg, "rv_vt_scaling: null series");
    rvol::VtOptions opts;
    if (t_grid && nt > 0) opts.t_grid.assign(t_grid, t_grid + nt);
    if (min_blocks > 0) opts.min_blocks = min_blocks;
    const auto r = rvol::vt_scaling(s->v, opts);
    if (slope) *slope = r.slope;
    if (intercept) *intercept = r.intercept;
    if (n_points) {
      const std::size_t cap = *n_points;
      const std::size_t cnt = std::min(cap, r.log_t.size());
      if (points_log_t) std::copy(r.log_t.begin(), r.log_t.begin() + std::ptrdiff_t(cnt), points_log_t);
      if (points_log_v) std::copy(r.log_v.begin(), r.log_v.begin() + std::ptrdiff_t(cnt), points_log_v);
      *n_points = r.log_t.size();
    }
  });
}

rv_status rv_frac_diff(const rv_series* s, double d, size_t truncation, rv_series** out,
                       double* tail_mass) {
  return guarded([&] {
    rvol::require(s && out, rvol::ErrorKind::invalid_arg, "rv_frac_diff: null argument");
    const auto lv = s->v.log_vol();
    auto r = rvol::frac_diff(lv, d, truncation == 0 ? 500 : truncation);
    if (tail_mass) *tail_mass = r.tail_mass;
    rvol::VolSeries res;
    res.values = std::move(r.values);
    res.units = rvol::Units::logvar;
    res.label = s->v.label + "-fracdiff";
    *out = new rv_series{std::move(res)};
  });
}

rv_status rv_acf_with_bands(const rv_series* s, int max_lag, double* acf, double* bartlett_band,
                            double* inside_fraction) {
  return guarded([&] {
    rvol::require(s != nullptr, rvol::ErrorKind::invalid_arg, "rv_acf_with_bands: null series");
    // logvar units hold already-transformed data (e.g. frac_diff residuals).
    const auto vals = s->v.units == rvol::Units::logvar ? s->v.values : s->v.log_vol();
    const auto r = rvol::acf_with_bands(vals, max_lag);
    if (acf) std::copy(r.acf.begin(), r.acf.end(), acf);
    if (bartlett_band) *bartlett_band = r.bartlett_band;
    if (inside_fraction) *inside_fraction = r.inside_fraction;
  });
}

/* -------------------------------- microsim ------------------------------- */

rv_status rv_hawkes_simulate(double mu, const char* kernel, double amplitude, double decay,
                             double cutoff, double horizon, uint64_t seed, rv_events** out) {
  return guarded([&] {
    rvol::require(out != nullptr, rvol::ErrorKind::invalid_arg, "rv_hawkes_simulate: null out");
    rvol::HawkesParams p;
    p.mu = mu;
    p.kernel = kernel_of(kernel);
    p.amplitude = amplitude;
    p.decay = decay;
    p.cutoff = cutoff;
    p.horizon = horizon;
    p.seed = seed;
    *out = new rv_events{rvol::hawkes_simulate(p)};
  });
}

rv_status rv_hawkes_l1_norm(const char* kernel, double amplitude, double decay, double cutoff,
                            double* out) {
  return guarded([&] {
    rvol::require(out != nullptr, rvol::ErrorKind::invalid_arg, "rv_hawkes_l1_norm: null out");
    rvol::HawkesParams p;
    p.kernel = kernel_of(kernel);
    p.amplitude = amplitude;
    p.decay = decay;
    p.cutoff = cutoff;
    *out = p.l1_norm();
  });
}

size_t rv_events_len(const rv_events* e) { return e ? e->v.jump_times.size() : 0; }
const double* rv_events_times(const rv_events* e) {
  return e ? e->v.jump_times.data() : nullptr;
}

rv_status rv_events_save_csv(const rv_events* e, const char* path) {
  return guarded([&] {
    rvol::require(e && path, rvol::ErrorKind::invalid_arg, "rv_events_save_csv: null argument");
    rvol::save_events_csv(e->v, path);
  });
}

rv_status rv_coarse_grain_to_vol(const rv_events* e, double bin_width, rv_series** out,
                                 size_t* floored_bins) {
  return guarded([&] {
    rvol::require(e && out, rvol::ErrorKind::invalid_arg, "rv_coarse_grain_to_vol: null argument");
    auto r = rvol::coarse_grain_to_vol(e->v, bin_width);
    if (floored_bins) *floored_bins = r.floored_bins;
    *out = new rv_series{std::move(r.series)};
  });
}

void rv_events_free(rv_events* e) { delete e; }

/* --------------------------------- study --------------------------------- */

rv_status rv_study_run(double hurst, double nu, double alpha, double mean_level, int days,
                       int steps_per_day, uint64_t seed, rv_study** out) {
  return guarded([&] {
    rvol::require(out != nullptr, rvol::ErrorKind::invalid_arg, "rv_study_run: null out");
    rvol::StudyParams p;
    p.hurst = hurst;
    p.nu = nu;
    p.alpha = alpha;
    p.mean_level = mean_level;  // the study starts X at its mean level
    p.days = days;
    p.steps_per_day = steps_per_day;
    p.seed = seed;
    *out = new rv_study{rvol::run_simulation_study(p)};
  });
}

rv_status rv_study_hurst(const rv_study* st, int which, double* out) {
  return guarded([&] {
    rvol::require(st && out && which >= 0 && which <= 2, rvol::ErrorKind::invalid_arg,
                  "rv_study_hurst: bad arguments");
    *out = which == 0 ? st->v.spot.hurst_hat
                      : (which == 1 ? st->v.short_rv.hurst_hat : st->v.long_rv.hurst_hat);
  });
}

rv_status rv_study_report(const rv_study* st, int which, rv_scaling_report** out) {
  return guarded([&] {
    rvol::require(st && out && which >= 0 && which <= 2, rvol::ErrorKind::invalid_arg,
                  "rv_study_report: bad arguments");
    const rvol::ScalingReport& r =
        which == 0 ? st->v.spot : (which == 1 ? st->v.short_rv : st->v.long_rv);
    *out = new rv_scaling_report{r};
  });
}

rv_status rv_study_to_json(const rv_study* st, char** json) {
  return guarded([&] {
    rvol::require(st && json, rvol::ErrorKind::invalid_arg, "rv_study_to_json: null argument");
    *json = dup_string(st->v.to_json());
  });
}

void rv_study_free(rv_study* st) { delete st; }

}  // extern "C"
