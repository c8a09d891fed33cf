#include "core/covstruct.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>

#include "core/fracproc.hpp"

namespace rvol {

std::vector<double> empirical_autocov(const VolSeries& series, const std::vector<int>& lags,
                                      CovTransform transform, bool center) {
  series.validate();
  std::vector<double> y;
  if (transform == CovTransform::log) {
    y = series.log_vol();
  } else {
    const auto v = series.variance();
    y.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) y[i] = std::sqrt(v[i]);  // sigma level
  }
  const std::size_t n = y.size();
  const int max_lag = lags.empty() ? 0 : *std::max_element(lags.begin(), lags.end());
  if (n <= std::size_t(std::max(max_lag, 0)))
    fail_data("empirical_autocov: series shorter than max lag");

  const double mean = center ? sample_mean(y) : 0.0;
  std::vector<double> out(lags.size());
  for (std::size_t i = 0; i < lags.size(); ++i) {
    const int lag = lags[i];
    require(lag >= 0, ErrorKind::invalid_arg, "empirical_autocov: lags must be >= 0");
    double acc = 0.0;
    for (std::size_t k = 0; k + std::size_t(lag) < n; ++k)
      acc += (y[k] - mean) * (y[k + std::size_t(lag)] - mean);
    out[i] = acc / double(n);
  }
  return out;
}

std::vector<double> fsv_m2_curve(double hurst, double nu, double alpha,
                                 const std::vector<double>& lags) {
  require(hurst > 0.0 && hurst < 1.0, ErrorKind::invalid_arg, "fsv_m2_curve: hurst in (0,1)");
  require(nu > 0.0 && alpha >= 0.0, ErrorKind::invalid_arg, "fsv_m2_curve: nu > 0, alpha >= 0");
  std::vector<double> out(lags.size());
  if (alpha == 0.0) {
    for (std::size_t i = 0; i < lags.size(); ++i)
      out[i] = nu * nu * std::pow(lags[i], 2.0 * hurst);
    return out;
  }
  const double var = fou_stationary_variance(hurst, nu, alpha);
  for (std::size_t i = 0; i < lags.size(); ++i)
    out[i] = 2.0 * (var - fou_autocov(hurst, nu, alpha, lags[i]));
  return out;
}

double smoothing_bias_f(double hurst, double theta) {
  require(hurst > 0.0 && hurst < 1.0, ErrorKind::invalid_arg, "smoothing_bias_f: hurst in (0,1)");
  require(theta > 0.0 && theta <= 1.0, ErrorKind::invalid_arg, "smoothing_bias_f: theta in (0,1]");
  const double p = 2.0 * hurst + 2.0;
  const double denom = (2.0 * hurst + 1.0) * (2.0 * hurst + 2.0);

  if (theta > 1e-3) {
    const double bracket = std::pow(1.0 + theta, p) - 2.0 - 2.0 * std::pow(theta, p) +
                           std::pow(1.0 - theta, p);
    return bracket / (theta * theta * denom);
  }

  // Small theta: (1+t)^p + (1-t)^p - 2 = 2 sum_{k>=1} C(p,2k) t^{2k}; the k = 1
  // term equals the denominator times t^2, so f = 1 + correction without the
  // catastrophic cancellation of the direct form.
  double sum = 0.0;
  double coef = p * (p - 1.0) / 2.0;  // C(p,2)
  double tpow = 1.0;                  // theta^{2k-2}
  for (int k = 2; k < 40; ++k) {
    coef *= (p - 2.0 * k + 2.0) * (p - 2.0 * k + 1.0) / ((2.0 * k - 1.0) * (2.0 * k));
    tpow *= theta * theta;
    const double term = coef * tpow;
    sum += term;
    if (std::fabs(term) < 1e-18) break;
  }
  return 1.0 + (2.0 * sum - 2.0 * std::pow(theta, p - 2.0)) / denom;
}

void SmoothingSpec::validate() const {
  require(hurst > 0.0 && hurst < 1.0, ErrorKind::invalid_arg, "SmoothingSpec: hurst in (0,1)");
  require(alpha_amp > 0.0, ErrorKind::invalid_arg, "SmoothingSpec: alpha_amp > 0");
  require(window > 0.0, ErrorKind::invalid_arg, "SmoothingSpec: window > 0");
  require(!lags.empty(), ErrorKind::invalid_arg, "SmoothingSpec: lags empty");
  for (double l : lags)
    require(l > window, ErrorKind::invalid_arg, "SmoothingSpec: requires window < every lag");
}

std::vector<double> smoothed_m2(const SmoothingSpec& spec) {
  spec.validate();
  std::vector<double> out(spec.lags.size());
  for (std::size_t i = 0; i < spec.lags.size(); ++i) {
    const double lag = spec.lags[i];
    out[i] = spec.alpha_amp * spec.alpha_amp * std::pow(lag, 2.0 * spec.hurst) *
             smoothing_bias_f(spec.hurst, spec.window / lag);
  }
  return out;
}

SmoothingRegression smoothing_regression(double hurst, double alpha_amp, double window,
                                         int lag_min, int lag_max) {
  require(lag_min >= 1 && lag_max > lag_min, ErrorKind::invalid_arg,
          "smoothing_regression: bad lag range");
  SmoothingSpec spec;
  spec.hurst = hurst;
  spec.alpha_amp = alpha_amp;
  spec.window = window;
  for (int d = lag_min; d <= lag_max; ++d) spec.lags.push_back(double(d));
  const auto m2 = smoothed_m2(spec);

  std::vector<double> x(m2.size()), y(m2.size());
  for (std::size_t i = 0; i < m2.size(); ++i) {
    x[i] = std::log(spec.lags[i]);
    y[i] = std::log(m2[i]);
  }
  const LinFit f = ols_line(x, y);
  return {std::exp(0.5 * f.intercept), 0.5 * f.slope};
}

// ---------------------------------------------------------------------------
// Double-integral oracle
// ---------------------------------------------------------------------------

namespace {

struct InnerCtx {
  double h2, lag, s, delta;
};

double inner_integrand(double u, void* raw) {
  const auto* c = static_cast<InnerCtx*>(raw);
  return std::pow(std::fabs(u - c->s + c->lag), c->h2) - std::pow(std::fabs(u - c->s), c->h2);
}

struct OuterCtx {
  double h2, lag, delta;
  gsl_integration_workspace* inner_ws;
};

double outer_integrand(double s, void* raw) {
  auto* c = static_cast<OuterCtx*>(raw);
  InnerCtx ic{c->h2, c->lag, s, c->delta};
  gsl_function f{&inner_integrand, &ic};
  double result = 0, err = 0;
  // |u - s|^{2H} has a kink at u = s; integrate the two smooth pieces.
  double pts[3] = {0.0, s, c->delta};
  int npts = (s > 0.0 && s < c->delta) ? 3 : 2;
  if (npts == 2) {
    pts[1] = c->delta;
  }
  gsl_integration_qagp(&f, pts, std::size_t(npts), 0.0, 1e-11, 4096, c->inner_ws, &result, &err);
  return result;
}

}  // namespace

double smoothed_m2_quadrature(double hurst, double alpha_amp, double window, double lag) {
  require(hurst > 0.0 && hurst < 1.0 && window > 0.0 && lag > window, ErrorKind::invalid_arg,
          "smoothed_m2_quadrature: need 0 < window < lag and hurst in (0,1)");
  gsl_set_error_handler_off();
  gsl_integration_workspace* inner = gsl_integration_workspace_alloc(4096);
  gsl_integration_workspace* outer = gsl_integration_workspace_alloc(4096);
  OuterCtx ctx{2.0 * hurst, lag, window, inner};
  gsl_function f{&outer_integrand, &ctx};
  double result = 0, err = 0;
  const int rc = gsl_integration_qag(&f, 0.0, window, 0.0, 1e-9, 4096, GSL_INTEG_GAUSS61, outer,
                                     &result, &err);
  gsl_integration_workspace_free(inner);
  gsl_integration_workspace_free(outer);
  if (rc != 0) fail_numeric("smoothed_m2_quadrature: quadrature did not converge");
  return alpha_amp * alpha_amp / (window * window) * result;
}

}  // namespace rvol
