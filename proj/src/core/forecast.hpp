#pragma once

#include <map>
#include <string>
#include <vector>

#include "core/series.hpp"

namespace rvol {

// ---------------------------------------------------------------------------
// RFSV predictor
// ---------------------------------------------------------------------------

/// Truncation error of the normalized prediction kernel:
///   eps(r) = (cos(H pi)/pi) int_r^inf du / ((u+1) u^{H+1/2}).
double rfsv_truncation_error(double hurst, double r);

/// Smallest r with eps(r) <= target.
double rfsv_truncation_r(double hurst, double eps_target);

/// Discretized weights for daily observations y_{t}, y_{t-1}, ..., horizon
/// delta days ahead: the kernel is integrated exactly against a piecewise
/// linear interpolant of the observations (hats on the age grid), so the
/// (t-s)^{-H-1/2} singularity at the newest point is handled analytically.
/// Weights are positive, decreasing, and sum to 1 - eps(lookback/delta).
std::vector<double> rfsv_kernel_weights(double hurst, double horizon, std::size_t n_obs,
                                        int steps_per_day = 1);

/// E[log sigma^2_{t+Delta} | F_t]. history holds log-variance observations in
/// time order (last = today). The window mean is carried through the kernel
/// explicitly so the truncated weights introduce no level bias.
double rfsv_forecast_logvar(std::span<const double> logvar_history, double horizon, double hurst,
                            double truncation_r, int steps_per_day = 1);
double rfsv_forecast_logvar(const VolSeries& history, double horizon, double hurst,
                            double truncation_r);

/// Convexity constant c = Gamma(3/2-H) / (Gamma(H+1/2) Gamma(2-2H)).
double rfsv_conditional_variance_c(double hurst);

/// Variance predictor exp{ logvar forecast + 2 c nu^2 Delta^{2H} }.
double rfsv_forecast_var(std::span<const double> logvar_history, double horizon, double hurst,
                         double nu, double truncation_r);
double rfsv_forecast_var(const VolSeries& history, double horizon, double hurst, double nu,
                         double truncation_r);

// ---------------------------------------------------------------------------
// Baselines
// ---------------------------------------------------------------------------

struct ArModel {
  int order = 1;
  double mean = 0.0;
  std::vector<double> coeff;  // phi_1..phi_p on demeaned data

  /// Iterated multi-step forecast from the end of the window.
  double forecast(std::span<const double> window, int horizon) const;
};

/// Yule-Walker fit via Levinson-Durbin on the biased sample autocovariances.
ArModel ar_fit(std::span<const double> window, int order);

struct HarModel {
  int horizon = 1;
  double k0 = 0.0, c1 = 0.0, c5 = 0.0, c20 = 0.0;  // intercept, daily, weekly, monthly

  double forecast(std::span<const double> window) const;
};

/// Direct-projection OLS of y_{t+horizon} on {1, y_t, 5-day mean, 20-day mean}.
HarModel har_fit(std::span<const double> window, int horizon);

// ---------------------------------------------------------------------------
// Evaluation harness
// ---------------------------------------------------------------------------

struct ForecastRecord {
  std::size_t index = 0;   // forecast origin k (prediction is for k + horizon)
  std::string date;        // origin date when known
  int horizon = 1;
  std::string model;
  double predicted_logvar = 0.0;
  double predicted_var = 0.0;
  double realized_logvar = 0.0;
};

struct PRatioOptions {
  std::vector<int> horizons = {1, 5, 20};
  std::vector<int> ar_orders = {5, 10};
  bool include_har = true;
  bool include_rfsv = true;
  std::size_t training_window = 500;
  double eps_target = 0.01;     // kernel truncation target for the RFSV predictor
  bool variance_targets = false;  // Table-2 mode: P computed on variance levels
  bool keep_records = false;
};

struct PRatioResult {
  // model name -> horizon -> P
  std::map<std::string, std::map<int, double>> p;
  double hurst_used = 0.0;
  double nu_used = 0.0;
  std::vector<ForecastRecord> records;

  std::string to_json() const;
  void write_records_csv(const std::string& path) const;
};

/// Rolling-window evaluation of Section-5 style predictors. H and nu for the
/// RFSV predictor are estimated once on the full series.
PRatioResult evaluate_p_ratio(const VolSeries& series, const PRatioOptions& opts = {});

}  // namespace rvol
