#include "core/scaling.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

namespace rvol {

std::vector<double> default_q_grid() { return {0.5, 1.0, 1.5, 2.0, 3.0}; }

std::vector<int> default_delta_grid() {
  std::vector<int> d(30);
  for (int i = 0; i < 30; ++i) d[i] = i + 1;
  return d;
}

double m_q_delta(std::span<const double> log_vol, double q, int delta) {
  require(q > 0.0, ErrorKind::invalid_arg, "m_q_delta: q must be > 0");
  require(delta >= 1, ErrorKind::invalid_arg, "m_q_delta: delta must be >= 1");
  const std::size_t n = log_vol.size();
  if (n <= std::size_t(delta)) fail_data("m_q_delta: series too short for lag " + std::to_string(delta));

  double acc = 0.0;
  int used_offsets = 0;
  for (int off = 0; off < delta; ++off) {
    double sum = 0.0;
    std::size_t cnt = 0;
    for (std::size_t k = std::size_t(off) + std::size_t(delta); k < n; k += std::size_t(delta)) {
      sum += std::pow(std::fabs(log_vol[k] - log_vol[k - delta]), q);
      ++cnt;
    }
    if (cnt == 0) continue;
    acc += sum / double(cnt);
    ++used_offsets;
  }
  if (used_offsets == 0) fail_data("m_q_delta: series too short for lag " + std::to_string(delta));
  return acc / double(used_offsets);
}

double m_q_delta(const VolSeries& series, double q, int delta) {
  series.validate();
  const auto lv = series.log_vol();
  return m_q_delta(lv, q, delta);
}

ScalingReport fit_scaling_logvol(std::span<const double> log_vol, const std::string& label,
                                 const std::vector<double>& q_grid,
                                 const std::vector<int>& delta_grid) {
  require(!q_grid.empty() && !delta_grid.empty(), ErrorKind::invalid_arg,
          "fit_scaling: empty grids");
  ScalingReport rep;
  rep.q_grid = q_grid;
  rep.delta_grid = delta_grid;
  rep.label = label;

  std::vector<double> logd(delta_grid.size());
  for (std::size_t i = 0; i < delta_grid.size(); ++i) logd[i] = std::log(double(delta_grid[i]));

  rep.m_values.resize(q_grid.size());
  rep.zeta.resize(q_grid.size());
  rep.zeta_stderr.resize(q_grid.size());
  rep.intercepts.resize(q_grid.size());

  double sum_zq = 0.0, sum_qq = 0.0;
  double intercept_q2 = 0.0;
  bool have_q2 = false;
  for (std::size_t qi = 0; qi < q_grid.size(); ++qi) {
    auto& row = rep.m_values[qi];
    row.resize(delta_grid.size());
    std::vector<double> logm(delta_grid.size());
    for (std::size_t di = 0; di < delta_grid.size(); ++di) {
      row[di] = m_q_delta(log_vol, q_grid[qi], delta_grid[di]);
      if (row[di] <= 0.0)
        fail_numeric("fit_scaling: degenerate regression, m(q,delta) vanished at q=" +
                     std::to_string(q_grid[qi]));
      logm[di] = std::log(row[di]);
    }
    const LinFit f = ols_line(logd, logm);
    rep.zeta[qi] = f.slope;
    rep.zeta_stderr[qi] = f.slope_stderr;
    rep.intercepts[qi] = f.intercept;
    sum_zq += f.slope * q_grid[qi];
    sum_qq += q_grid[qi] * q_grid[qi];
    if (std::fabs(q_grid[qi] - 2.0) < 1e-12) {
      intercept_q2 = f.intercept;
      have_q2 = true;
    }
  }
  rep.hurst_hat = sum_zq / sum_qq;
  // nu^2 = exp(intercept of the q = 2 regression); m(2,D) ~ nu^2 D^{2H} with K_2 = 1.
  if (!have_q2) {
    std::vector<int> dg = rep.delta_grid;
    std::vector<double> logm2(dg.size());
    for (std::size_t di = 0; di < dg.size(); ++di)
      logm2[di] = std::log(m_q_delta(log_vol, 2.0, dg[di]));
    intercept_q2 = ols_line(logd, logm2).intercept;
  }
  rep.nu_hat = std::sqrt(std::exp(intercept_q2));
  return rep;
}

ScalingReport fit_scaling(const VolSeries& series, const std::vector<double>& q_grid,
                          const std::vector<int>& delta_grid) {
  series.validate();
  const auto lv = series.log_vol();
  return fit_scaling_logvol(lv, series.label, q_grid, delta_grid);
}

IncrementMoments increment_moments(const VolSeries& series, int delta, int bins,
                                   double hurst_for_rescale) {
  series.validate();
  require(delta >= 1, ErrorKind::invalid_arg, "increment_moments: delta >= 1");
  require(bins >= 1, ErrorKind::invalid_arg, "increment_moments: bins >= 1");
  const auto lv = series.log_vol();
  if (lv.size() <= std::size_t(delta)) fail_data("increment_moments: series too short");

  std::vector<double> inc(lv.size() - std::size_t(delta));
  for (std::size_t i = 0; i + std::size_t(delta) < lv.size(); ++i)
    inc[i] = lv[i + std::size_t(delta)] - lv[i];

  IncrementMoments out;
  out.stats = sample_moments(inc);
  out.normal_fit_mean = out.stats.mean;
  out.normal_fit_sd = std::sqrt(out.stats.variance);

  const auto [mn, mx] = std::minmax_element(inc.begin(), inc.end());
  double lo = *mn, hi = *mx;
  if (hi <= lo) hi = lo + 1.0;
  out.bin_edges.resize(std::size_t(bins) + 1);
  out.bin_counts.assign(std::size_t(bins), 0.0);
  for (int b = 0; b <= bins; ++b)
    out.bin_edges[std::size_t(b)] = lo + (hi - lo) * double(b) / double(bins);
  for (double v : inc) {
    int b = int(double(bins) * (v - lo) / (hi - lo));
    b = std::clamp(b, 0, bins - 1);
    out.bin_counts[std::size_t(b)] += 1.0;
  }

  // Self-similar overlay: the lag-1 normal fit scaled by delta^H.
  double h = hurst_for_rescale;
  if (h <= 0.0) h = fit_scaling_logvol(lv, series.label).hurst_hat;
  std::vector<double> inc1(lv.size() - 1);
  for (std::size_t i = 0; i + 1 < lv.size(); ++i) inc1[i] = lv[i + 1] - lv[i];
  const MomentStats s1 = sample_moments(inc1);
  const double scale = std::pow(double(delta), h);
  out.rescaled_mean = s1.mean * scale;
  out.rescaled_sd = std::sqrt(s1.variance) * scale;
  return out;
}

std::vector<ScalingReport> split_reestimate(const VolSeries& series, int n_segments,
                                            const std::vector<double>& q_grid,
                                            const std::vector<int>& delta_grid) {
  series.validate();
  require(n_segments >= 1, ErrorKind::invalid_arg, "split_reestimate: n_segments >= 1");
  const std::size_t n = series.size();
  const std::size_t seg = n / std::size_t(n_segments);
  const int max_delta = *std::max_element(delta_grid.begin(), delta_grid.end());
  if (seg <= std::size_t(max_delta) + 1)
    fail_data("split_reestimate: segment too short for the delta grid");

  std::vector<ScalingReport> out;
  out.reserve(std::size_t(n_segments));
  for (int s = 0; s < n_segments; ++s) {
    const std::size_t b = std::size_t(s) * seg;
    const std::size_t e = (s == n_segments - 1) ? n : b + seg;
    auto piece = series.slice(b, e);
    piece.label = series.label + "[" + std::to_string(s + 1) + "/" + std::to_string(n_segments) + "]";
    out.push_back(fit_scaling(piece, q_grid, delta_grid));
  }
  return out;
}

std::string ScalingReport::to_json() const {
  nlohmann::ordered_json j;
  j["label"] = label;
  j["hurst_hat"] = hurst_hat;
  j["nu_hat"] = nu_hat;
  j["q_grid"] = q_grid;
  j["delta_grid"] = delta_grid;
  j["zeta"] = zeta;
  j["zeta_stderr"] = zeta_stderr;
  j["intercepts"] = intercepts;
  j["m_values"] = m_values;
  return j.dump(2);
}

void ScalingReport::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) fail_io("cannot write " + path);
  out << "q,delta,m,fitted\n";
  for (std::size_t qi = 0; qi < q_grid.size(); ++qi)
    for (std::size_t di = 0; di < delta_grid.size(); ++di) {
      const double fitted =
          std::exp(intercepts[qi] + zeta[qi] * std::log(double(delta_grid[di])));
      out << format_double(q_grid[qi]) << ',' << delta_grid[di] << ','
          << format_double(m_values[qi][di]) << ',' << format_double(fitted) << '\n';
    }
  if (!out) fail_io("write failed: " + path);
}

}  // namespace rvol
