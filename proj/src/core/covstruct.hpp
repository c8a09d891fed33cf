#pragma once

#include <string>
#include <vector>

#include "core/series.hpp"

namespace rvol {

enum class CovTransform { log, level };

/// Biased (1/N) empirical autocovariance of the chosen transform of the
/// series at each lag. With center = false the raw product moment
/// (1/N) sum y_{k+lag} y_k is returned instead (the E[sigma_{t+D} sigma_t]
/// analogue).
std::vector<double> empirical_autocov(const VolSeries& series, const std::vector<int>& lags,
                                      CovTransform transform, bool center = true);

/// Theoretical m(2,Delta) = 2 (Var[log sigma] - Cov[log sigma_t, log sigma_{t+D}])
/// in the stationary fOU log-vol model; alpha = 0 degenerates to nu^2 D^{2H}.
std::vector<double> fsv_m2_curve(double hurst, double nu, double alpha,
                                 const std::vector<double>& lags);

/// Smoothing bias of the window-averaged structure function,
///   f(theta) = [(1+theta)^{2H+2} - 2 - 2 theta^{2H+2} + (1-theta)^{2H+2}]
///              / [theta^2 (2H+1)(2H+2)],  theta = window / lag in (0,1].
/// Evaluated through a series expansion for small theta to keep full accuracy.
double smoothing_bias_f(double hurst, double theta);

struct SmoothingSpec {
  double hurst = 0.14;
  double alpha_amp = 0.3;  // fSS amplitude (not the fOU mean reversion)
  double window = 1.0 / 24.0;
  std::vector<double> lags;

  void validate() const;
};

/// alpha^2 Delta^{2H} f(window/Delta) across the spec's lags.
std::vector<double> smoothed_m2(const SmoothingSpec& spec);

struct SmoothingRegression {
  double alpha_hat = 0.0;
  double hurst_hat = 0.0;
};

/// Log-log regression of smoothed_m2 over lags 1..100 (the Appendix-C style
/// numerical experiment); deterministic.
SmoothingRegression smoothing_regression(double hurst, double alpha_amp, double window,
                                         int lag_min = 1, int lag_max = 100);

/// Brute-force oracle for smoothed_m2: iterated adaptive quadrature of
/// (alpha^2/delta^2) int int |u-s+Delta|^{2H} - |u-s|^{2H} du ds over the
/// window square. Test support; independent of the closed form.
double smoothed_m2_quadrature(double hurst, double alpha_amp, double window, double lag);

}  // namespace rvol
