#pragma once

#include <string>
#include <vector>

#include "core/series.hpp"

namespace rvol {

/// Per-q regression results of the structure-function analysis.
struct ScalingReport {
  std::vector<double> q_grid;
  std::vector<int> delta_grid;                 // lags in days
  std::vector<std::vector<double>> m_values;   // [q][delta]
  std::vector<double> zeta;                    // per-q log-log slope
  std::vector<double> zeta_stderr;
  std::vector<double> intercepts;              // per-q log-log intercept
  double hurst_hat = 0.0;                      // through-origin slope of zeta_q vs q
  double nu_hat = 0.0;                         // sqrt(exp(intercept at q = 2))
  std::string label;

  std::string to_json() const;
  void write_csv(const std::string& path) const;  // (q, delta, m, fitted) rows
};

/// Offset-averaged structure function
///   m(q,delta) = mean over starting offsets of (1/N) sum |log s_{k d} - log s_{(k-1) d}|^q.
double m_q_delta(const VolSeries& series, double q, int delta);
double m_q_delta(std::span<const double> log_vol, double q, int delta);

std::vector<double> default_q_grid();
std::vector<int> default_delta_grid();

ScalingReport fit_scaling(const VolSeries& series,
                          const std::vector<double>& q_grid = default_q_grid(),
                          const std::vector<int>& delta_grid = default_delta_grid());
ScalingReport fit_scaling_logvol(std::span<const double> log_vol, const std::string& label,
                                 const std::vector<double>& q_grid = default_q_grid(),
                                 const std::vector<int>& delta_grid = default_delta_grid());

struct IncrementMoments {
  MomentStats stats;                    // overlapping log-increments at the lag
  std::vector<double> bin_edges;
  std::vector<double> bin_counts;
  double normal_fit_mean = 0.0;         // fitted at this lag
  double normal_fit_sd = 0.0;
  double rescaled_mean = 0.0;           // lag-1 fit rescaled by delta^H
  double rescaled_sd = 0.0;
};

IncrementMoments increment_moments(const VolSeries& series, int delta, int bins = 50,
                                   double hurst_for_rescale = 0.0);

std::vector<ScalingReport> split_reestimate(const VolSeries& series, int n_segments,
                                            const std::vector<double>& q_grid = default_q_grid(),
                                            const std::vector<int>& delta_grid = default_delta_grid());

}  // namespace rvol
