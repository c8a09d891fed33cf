#pragma once

#include <cstdint>
#include <string>

#include "core/scaling.hpp"
#include "core/series.hpp"

namespace rvol {

/// Parameters of the RFSV simulation study: log-vol simulated on a fine
/// intraday grid, an efficient price diffused against it, and daily
/// realized-variance proxies measured back from the (tick-rounded) price.
struct StudyParams {
  double hurst = 0.14;
  double nu = 0.3;
  double alpha = 5e-4;       // per day
  double mean_level = -5.0;  // m = X_0
  int days = 2000;
  int steps_per_day = 1440;  // 1-minute grid
  double tick = 5e-4;        // price rounding grid
  double price0 = 100.0;
  // Window starts/lengths in fractions of a day.
  double short_window_start = 10.0 / 24.0, short_window_len = 1.0 / 24.0;
  double long_window_start = 8.0 / 24.0, long_window_len = 8.0 / 24.0;
  int short_sample_minutes = 1;  // return sampling inside the short window
  int long_sample_minutes = 5;
  double spot_time = 10.0 / 24.0;  // time of day for the spot ground truth
  std::uint64_t seed = 0;

  void validate() const;
};

struct StudyProxies {
  VolSeries spot;        // true spot variance sampled once per day
  VolSeries short_rv;    // subsample-averaged RV on the short window
  VolSeries long_rv;     // subsample-averaged RV on the long window
};

/// One simulated dataset of daily proxies.
StudyProxies simulate_study_proxies(const StudyParams& p);

struct StudyReport {
  ScalingReport spot;
  ScalingReport short_rv;
  ScalingReport long_rv;
  StudyParams params;

  std::string to_json() const;
};

/// The full pipeline: simulate, build both windowed proxies, fit the scaling
/// analysis on each plus the spot ground truth.
StudyReport run_simulation_study(const StudyParams& p);

}  // namespace rvol
