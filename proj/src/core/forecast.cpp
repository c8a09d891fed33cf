#include "core/forecast.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <numbers>

#include <json.hpp>

#include "core/scaling.hpp"

namespace rvol {

using std::numbers::pi;

// ---------------------------------------------------------------------------
// Prediction kernel  k(u) = 1 / ((u+1) u^{H+1/2}),  normalized by cos(H pi)/pi
// ---------------------------------------------------------------------------

namespace {

// 20-point Gauss-Legendre nodes/weights on [-1,1].
constexpr int kGL = 20;
const std::array<double, kGL>& gl_nodes() {
  static const std::array<double, kGL> x = {
      -0.9931285991850949, -0.9639719272779138, -0.9122344282513259, -0.8391169718222188,
      -0.7463319064601508, -0.6360536807265150, -0.5108670019508271, -0.3737060887154195,
      -0.2277858511416451, -0.0765265211334973, 0.0765265211334973,  0.2277858511416451,
      0.3737060887154195,  0.5108670019508271,  0.6360536807265150,  0.7463319064601508,
      0.8391169718222188,  0.9122344282513259,  0.9639719272779138,  0.9931285991850949};
  return x;
}
const std::array<double, kGL>& gl_weights() {
  static const std::array<double, kGL> w = {
      0.0176140071391521, 0.0406014298003869, 0.0626720483341091, 0.0832767415767048,
      0.1019301198172404, 0.1181945319615184, 0.1316886384491766, 0.1420961093183820,
      0.1491729864726037, 0.1527533871307258, 0.1527533871307258, 0.1491729864726037,
      0.1420961093183820, 0.1316886384491766, 0.1181945319615184, 0.1019301198172404,
      0.0832767415767048, 0.0626720483341091, 0.0406014298003869, 0.0176140071391521};
  return w;
}

double kernel(double hurst, double u) {
  return 1.0 / ((u + 1.0) * std::pow(u, hurst + 0.5));
}

// G(x) = int_0^x k(u) du by alternating series, for x < 1.
double primitive_small(double hurst, double x) {
  const double a = 0.5 - hurst;  // exponent offset
  double sum = 0.0;
  double xp = std::pow(x, a);
  for (int k = 0; k < 20000; ++k) {
    const double term = xp / (a + double(k));
    sum += (k % 2 == 0) ? term : -term;
    xp *= x;
    if (xp / (a + double(k) + 1.0) < 1e-17 * std::fabs(sum)) break;
  }
  return sum;
}

// int_x^inf k(u) du by the 1/u expansion, for x > 1.
double primitive_tail(double hurst, double x) {
  const double a = hurst + 0.5;
  double sum = 0.0;
  double xp = std::pow(x, -a);
  const double inv = 1.0 / x;
  for (int k = 0; k < 20000; ++k) {
    const double term = xp / (a + double(k));
    sum += (k % 2 == 0) ? term : -term;
    xp *= inv;
    if (xp / (a + double(k) + 1.0) < 1e-17 * std::fabs(sum)) break;
  }
  return sum;
}

double gl_integral(double hurst, double lo, double hi) {
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  double acc = 0.0;
  for (int i = 0; i < kGL; ++i) acc += gl_weights()[i] * kernel(hurst, mid + half * gl_nodes()[i]);
  return acc * half;
}

double primitive_G(double hurst, double x) {
  if (x <= 0.0) return 0.0;
  if (x <= 0.9) return primitive_small(hurst, x);
  if (x <= 1.2) return primitive_small(hurst, 0.9) + gl_integral(hurst, 0.9, x);
  return pi / std::cos(hurst * pi) - primitive_tail(hurst, x);
}

}  // namespace

double rfsv_truncation_error(double hurst, double r) {
  require(hurst >= 0.0 && hurst < 0.5, ErrorKind::invalid_arg,
          "rfsv_truncation_error: hurst in [0,1/2)");
  require(r > 0.0, ErrorKind::invalid_arg, "rfsv_truncation_error: r > 0");
  const double total = pi / std::cos(hurst * pi);
  return std::cos(hurst * pi) / pi * (total - primitive_G(hurst, r));
}

double rfsv_truncation_r(double hurst, double eps_target) {
  require(eps_target > 0.0 && eps_target < 1.0, ErrorKind::invalid_arg,
          "rfsv_truncation_r: eps_target in (0,1)");
  double lo = 1e-9, hi = 1.0;
  while (rfsv_truncation_error(hurst, hi) > eps_target) {
    hi *= 2.0;
    if (hi > 1e15) fail_numeric("rfsv_truncation_r: target unreachable");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (rfsv_truncation_error(hurst, mid) > eps_target)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

std::vector<double> rfsv_kernel_weights(double hurst, double horizon, std::size_t n_obs,
                                        int steps_per_day) {
  require(hurst >= 0.0 && hurst < 0.5, ErrorKind::invalid_arg,
          "rfsv_kernel_weights: hurst in [0,1/2)");
  require(horizon > 0.0, ErrorKind::invalid_arg, "rfsv_kernel_weights: horizon > 0");
  require(n_obs >= 2, ErrorKind::invalid_arg, "rfsv_kernel_weights: need >= 2 observations");
  require(steps_per_day >= 1, ErrorKind::invalid_arg, "rfsv_kernel_weights: steps_per_day >= 1");

  const double du = 1.0 / (double(steps_per_day) * horizon);
  std::vector<double> w(n_obs, 0.0);

  // Cell 0 holds the integrable singularity; substitute v = u^{1/2-H} so the
  // measure k(u) du becomes dv / ((1/2-H)(1+u(v))) and integrate the hat parts
  // with Gauss-Legendre in v.
  {
    const double a = 0.5 - hurst;
    const double vhi = std::pow(du, a);
    const double mid = 0.5 * vhi, half = 0.5 * vhi;
    double w0 = 0.0, w1 = 0.0;
    for (int i = 0; i < kGL; ++i) {
      const double v = mid + half * gl_nodes()[i];
      const double u = std::pow(v, 1.0 / a);
      const double base = gl_weights()[i] * half / (a * (1.0 + u));
      const double frac = u / du;  // hat_1 share
      w0 += base * (1.0 - frac);
      w1 += base * frac;
    }
    w[0] += w0;
    w[1] += w1;
  }

  for (std::size_t j = 1; j + 1 < n_obs; ++j) {
    const double lo = double(j) * du, hi = double(j + 1) * du;
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double wl = 0.0, wr = 0.0;
    for (int i = 0; i < kGL; ++i) {
      const double u = mid + half * gl_nodes()[i];
      const double base = gl_weights()[i] * half * kernel(hurst, u);
      const double frac = (u - lo) / du;
      wl += base * (1.0 - frac);
      wr += base * frac;
    }
    w[j] += wl;
    w[j + 1] += wr;
  }

  const double norm = std::cos(hurst * pi) / pi;
  for (double& x : w) x *= norm;
  return w;
}

double rfsv_forecast_logvar(std::span<const double> logvar_history, double horizon, double hurst,
                            double truncation_r, int steps_per_day) {
  require(hurst > 0.0 && hurst < 0.5, ErrorKind::invalid_arg,
          "rfsv_forecast_logvar: hurst in (0,1/2)");
  require(truncation_r > 0.0, ErrorKind::invalid_arg, "rfsv_forecast_logvar: truncation_r > 0");
  const std::size_t needed =
      std::size_t(std::ceil(horizon * truncation_r)) * std::size_t(steps_per_day);
  if (logvar_history.size() < std::max<std::size_t>(needed, 2))
    fail_data("rfsv_forecast_logvar: insufficient history, need " + std::to_string(needed) +
              " observations, have " + std::to_string(logvar_history.size()));

  const std::size_t n = std::max<std::size_t>(needed, 2);
  const auto w = rfsv_kernel_weights(hurst, horizon, n, steps_per_day);

  double mean = 0.0;
  for (std::size_t j = 0; j < n; ++j) mean += logvar_history[logvar_history.size() - 1 - j];
  mean /= double(n);

  // Deviations-from-mean form: the untruncated kernel integrates constants to
  // one exactly, so the level is carried through explicitly and truncation
  // only discounts the fluctuation part.
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    acc += w[j] * (logvar_history[logvar_history.size() - 1 - j] - mean);
  return mean + acc;
}

double rfsv_forecast_logvar(const VolSeries& history, double horizon, double hurst,
                            double truncation_r) {
  const auto lv = history.log_vol();
  std::vector<double> logvar(lv.size());
  for (std::size_t i = 0; i < lv.size(); ++i) logvar[i] = 2.0 * lv[i];
  return rfsv_forecast_logvar(logvar, horizon, hurst, truncation_r, 1);
}

double rfsv_conditional_variance_c(double hurst) {
  require(hurst > 0.0 && hurst < 1.0, ErrorKind::invalid_arg,
          "rfsv_conditional_variance_c: hurst in (0,1)");
  return std::tgamma(1.5 - hurst) /
         (std::tgamma(hurst + 0.5) * std::tgamma(2.0 - 2.0 * hurst));
}

double rfsv_forecast_var(std::span<const double> logvar_history, double horizon, double hurst,
                         double nu, double truncation_r) {
  require(nu >= 0.0, ErrorKind::invalid_arg, "rfsv_forecast_var: nu >= 0");
  const double logfc = rfsv_forecast_logvar(logvar_history, horizon, hurst, truncation_r, 1);
  const double c = rfsv_conditional_variance_c(hurst);
  return std::exp(logfc + 2.0 * c * nu * nu * std::pow(horizon, 2.0 * hurst));
}

double rfsv_forecast_var(const VolSeries& history, double horizon, double hurst, double nu,
                         double truncation_r) {
  const auto lv = history.log_vol();
  std::vector<double> logvar(lv.size());
  for (std::size_t i = 0; i < lv.size(); ++i) logvar[i] = 2.0 * lv[i];
  return rfsv_forecast_var(logvar, horizon, hurst, nu, truncation_r);
}

// ---------------------------------------------------------------------------
// AR / HAR baselines
// ---------------------------------------------------------------------------

ArModel ar_fit(std::span<const double> window, int order) {
  require(order >= 1, ErrorKind::invalid_arg, "ar_fit: order >= 1");
  const std::size_t n = window.size();
  if (n < std::size_t(order) * 2 + 2)
    fail_data("ar_fit: insufficient history for order " + std::to_string(order));

  const double mean = sample_mean(window);
  std::vector<double> gamma(std::size_t(order) + 1, 0.0);
  for (int l = 0; l <= order; ++l) {
    double acc = 0.0;
    for (std::size_t k = 0; k + std::size_t(l) < n; ++k)
      acc += (window[k] - mean) * (window[k + std::size_t(l)] - mean);
    gamma[std::size_t(l)] = acc / double(n);
  }
  if (gamma[0] <= 0.0) fail_numeric("ar_fit: zero-variance window");

  // Levinson-Durbin
  std::vector<double> phi(std::size_t(order) + 1, 0.0), prev(std::size_t(order) + 1, 0.0);
  double err = gamma[0];
  for (int k = 1; k <= order; ++k) {
    double acc = gamma[std::size_t(k)];
    for (int j = 1; j < k; ++j) acc -= prev[std::size_t(j)] * gamma[std::size_t(k - j)];
    if (err <= 0.0) fail_numeric("ar_fit: singular normal equations");
    const double reflect = acc / err;
    phi = prev;
    phi[std::size_t(k)] = reflect;
    for (int j = 1; j < k; ++j)
      phi[std::size_t(j)] = prev[std::size_t(j)] - reflect * prev[std::size_t(k - j)];
    err *= (1.0 - reflect * reflect);
    prev = phi;
  }

  ArModel m;
  m.order = order;
  m.mean = mean;
  m.coeff.assign(phi.begin() + 1, phi.end());
  return m;
}

double ArModel::forecast(std::span<const double> window, int horizon) const {
  require(horizon >= 1, ErrorKind::invalid_arg, "ArModel::forecast: horizon >= 1");
  if (window.size() < coeff.size()) fail_data("ArModel::forecast: window shorter than order");
  std::vector<double> ext(window.end() - std::ptrdiff_t(coeff.size()), window.end());
  for (double& v : ext) v -= mean;
  for (int h = 0; h < horizon; ++h) {
    double nxt = 0.0;
    for (std::size_t j = 0; j < coeff.size(); ++j) nxt += coeff[j] * ext[ext.size() - 1 - j];
    ext.push_back(nxt);
  }
  return ext.back() + mean;
}

namespace {

// Solve the 4x4 normal equations with partial pivoting.
std::array<double, 4> solve4(std::array<std::array<double, 4>, 4> A, std::array<double, 4> b) {
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    for (int r = c + 1; r < 4; ++r)
      if (std::fabs(A[r][c]) > std::fabs(A[piv][c])) piv = r;
    std::swap(A[c], A[piv]);
    std::swap(b[c], b[piv]);
    if (std::fabs(A[c][c]) < 1e-300) fail_numeric("har_fit: singular normal equations");
    for (int r = c + 1; r < 4; ++r) {
      const double f = A[r][c] / A[c][c];
      for (int k = c; k < 4; ++k) A[r][k] -= f * A[c][k];
      b[r] -= f * b[c];
    }
  }
  std::array<double, 4> x{};
  for (int r = 3; r >= 0; --r) {
    double acc = b[r];
    for (int k = r + 1; k < 4; ++k) acc -= A[r][k] * x[k];
    x[r] = acc / A[r][r];
  }
  return x;
}

std::array<double, 4> har_regressors(std::span<const double> y, std::size_t t) {
  double m5 = 0.0, m20 = 0.0;
  for (std::size_t i = 0; i < 5; ++i) m5 += y[t - i];
  for (std::size_t i = 0; i < 20; ++i) m20 += y[t - i];
  return {1.0, y[t], m5 / 5.0, m20 / 20.0};
}

}  // namespace

HarModel har_fit(std::span<const double> window, int horizon) {
  require(horizon >= 1, ErrorKind::invalid_arg, "har_fit: horizon >= 1");
  const std::size_t n = window.size();
  if (n < std::size_t(horizon) + 40) fail_data("har_fit: insufficient history");

  std::array<std::array<double, 4>, 4> xtx{};
  std::array<double, 4> xty{};
  for (std::size_t t = 19; t + std::size_t(horizon) < n; ++t) {
    const auto x = har_regressors(window, t);
    const double y = window[t + std::size_t(horizon)];
    for (int i = 0; i < 4; ++i) {
      xty[std::size_t(i)] += x[std::size_t(i)] * y;
      for (int j = 0; j < 4; ++j) xtx[std::size_t(i)][std::size_t(j)] += x[std::size_t(i)] * x[std::size_t(j)];
    }
  }
  const auto beta = solve4(xtx, xty);
  HarModel m;
  m.horizon = horizon;
  m.k0 = beta[0];
  m.c1 = beta[1];
  m.c5 = beta[2];
  m.c20 = beta[3];
  return m;
}

double HarModel::forecast(std::span<const double> window) const {
  if (window.size() < 20) fail_data("HarModel::forecast: need 20 observations");
  const auto x = har_regressors(window, window.size() - 1);
  return k0 + c1 * x[1] + c5 * x[2] + c20 * x[3];
}

// ---------------------------------------------------------------------------
// P-ratio harness
// ---------------------------------------------------------------------------

PRatioResult evaluate_p_ratio(const VolSeries& series, const PRatioOptions& opts) {
  series.validate();
  const std::size_t W = opts.training_window;
  const int max_h = opts.horizons.empty()
                        ? 0
                        : *std::max_element(opts.horizons.begin(), opts.horizons.end());
  if (series.size() <= W + std::size_t(max_h))
    fail_data("evaluate_p_ratio: insufficient history, need > " +
              std::to_string(W + std::size_t(max_h)) + " observations");

  const auto lv = series.log_vol();
  std::vector<double> y(lv.size());  // log variance
  for (std::size_t i = 0; i < lv.size(); ++i) y[i] = 2.0 * lv[i];
  std::vector<double> v;  // variance levels for Table-2 mode
  if (opts.variance_targets) v = series.variance();

  PRatioResult res;

  // H and nu estimated once per asset on the full series.
  const ScalingReport rep = fit_scaling(series);
  double H = std::clamp(rep.hurst_hat, 0.01, 0.49);
  res.hurst_used = H;
  res.nu_used = rep.nu_hat;
  const double r_target = rfsv_truncation_r(H, opts.eps_target);
  const double c = rfsv_conditional_variance_c(H);

  struct ModelSpec {
    std::string name;
    int ar_order = 0;  // 0 = not AR
    bool har = false;
    bool rfsv = false;
  };
  std::vector<ModelSpec> models;
  for (int p : opts.ar_orders) models.push_back({"AR(" + std::to_string(p) + ")", p, false, false});
  if (opts.include_har) models.push_back({"HAR", 0, true, false});
  if (opts.include_rfsv) models.push_back({"RFSV", 0, false, true});

  const std::vector<double>& target = opts.variance_targets ? v : y;
  const double tbar = sample_mean(target);  // full-sample mean, as in the text

  for (int h : opts.horizons) {
    // Precompute the RFSV weights once at the longest usable lookback; for a
    // shorter history the leading slice of the same hat weights applies.
    const std::size_t L_max =
        std::min<std::size_t>(std::size_t(std::ceil(r_target * double(h))), series.size());
    std::vector<double> wfull;
    if (opts.include_rfsv) wfull = rfsv_kernel_weights(H, double(h), std::max<std::size_t>(L_max, 2));

    std::map<std::string, double> sse;
    double sst = 0.0;
    for (auto& m : models) sse[m.name] = 0.0;

    for (std::size_t k = W; k + std::size_t(h) < series.size(); ++k) {
      const double actual = target[k + std::size_t(h)];
      sst += (actual - tbar) * (actual - tbar);
      const std::span<const double> win_y(target.data() + (k + 1 - W), W);

      for (const auto& m : models) {
        double pred_t = 0.0;  // prediction in target units
        double pred_logvar = 0.0;
        if (m.ar_order > 0) {
          const ArModel ar = ar_fit(win_y, m.ar_order);
          pred_t = ar.forecast(win_y, h);
          pred_logvar = opts.variance_targets ? 0.0 : pred_t;
        } else if (m.har) {
          const HarModel har = har_fit(win_y, h);
          pred_t = har.forecast(win_y);
          pred_logvar = opts.variance_targets ? 0.0 : pred_t;
        } else {
          const std::size_t L = std::min<std::size_t>(L_max, k + 1);
          double mean = 0.0;
          for (std::size_t j = 0; j < L; ++j) mean += y[k - j];
          mean /= double(L);
          double acc = 0.0;
          for (std::size_t j = 0; j < L; ++j) acc += wfull[j] * (y[k - j] - mean);
          pred_logvar = mean + acc;
          pred_t = opts.variance_targets
                       ? std::exp(pred_logvar + 2.0 * c * res.nu_used * res.nu_used *
                                                    std::pow(double(h), 2.0 * H))
                       : pred_logvar;
        }
        sse[m.name] += (actual - pred_t) * (actual - pred_t);
        if (opts.keep_records) {
          ForecastRecord rec;
          rec.index = k;
          rec.date = k < series.dates.size() ? series.dates[k] : "";
          rec.horizon = h;
          rec.model = m.name;
          rec.predicted_logvar = pred_logvar;
          rec.predicted_var = opts.variance_targets ? pred_t : std::exp(pred_t);
          rec.realized_logvar = y[k + std::size_t(h)];
          res.records.push_back(std::move(rec));
        }
      }
    }
    if (sst <= 0.0) fail_numeric("evaluate_p_ratio: degenerate target variance");
    for (const auto& m : models) res.p[m.name][h] = sse[m.name] / sst;
  }
  return res;
}

std::string PRatioResult::to_json() const {
  nlohmann::ordered_json j;
  j["hurst_used"] = hurst_used;
  j["nu_used"] = nu_used;
  nlohmann::ordered_json tab;
  for (const auto& [model, byh] : p) {
    nlohmann::ordered_json row;
    for (const auto& [h, val] : byh) row[std::to_string(h)] = val;
    tab[model] = row;
  }
  j["p_ratio"] = tab;
  return j.dump(2);
}

void PRatioResult::write_records_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) fail_io("cannot write " + path);
  out << "index,date,horizon,model,predicted_logvar,predicted_var,realized_logvar\n";
  for (const auto& r : records)
    out << r.index << ',' << r.date << ',' << r.horizon << ',' << r.model << ','
        << format_double(r.predicted_logvar) << ',' << format_double(r.predicted_var) << ','
        << format_double(r.realized_logvar) << '\n';
  if (!out) fail_io("write failed: " + path);
}

}  // namespace rvol
