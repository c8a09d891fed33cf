#include "core/memdiag.hpp"

#include <algorithm>

#include <json.hpp>

namespace rvol {

VtScaling vt_scaling(const VolSeries& series, const VtOptions& opts) {
  series.validate();
  const auto var = series.variance();

  std::vector<int> grid = opts.t_grid;
  if (grid.empty())
    for (int t = 1; t <= 60; ++t) grid.push_back(t);

  VtScaling out;
  for (int t : grid) {
    require(t >= 1, ErrorKind::invalid_arg, "vt_scaling: block lengths must be >= 1");
    std::vector<double> sums;
    if (opts.overlapping) {
      if (var.size() < std::size_t(t)) continue;
      double acc = 0.0;
      for (int i = 0; i < t; ++i) acc += var[std::size_t(i)];
      sums.push_back(acc);
      for (std::size_t k = std::size_t(t); k < var.size(); ++k) {
        acc += var[k] - var[k - std::size_t(t)];
        sums.push_back(acc);
      }
    } else {
      const std::size_t nb = var.size() / std::size_t(t);
      for (std::size_t b = 0; b < nb; ++b) {
        double acc = 0.0;
        for (int i = 0; i < t; ++i) acc += var[b * std::size_t(t) + std::size_t(i)];
        sums.push_back(acc);
      }
    }
    if (sums.size() < std::size_t(opts.min_blocks)) continue;
    const double v = sample_variance(sums);
    if (v <= 0.0) fail_numeric("vt_scaling: zero block-sum variance (degenerate series)");
    out.log_t.push_back(std::log(double(t)));
    out.log_v.push_back(std::log(v));
  }
  if (out.log_t.size() < 3)
    fail_data("vt_scaling: too few usable block lengths (series too short for the grid)");
  const LinFit f = ols_line(out.log_t, out.log_v);
  out.slope = f.slope;
  out.intercept = f.intercept;
  return out;
}

FracDiffResult frac_diff(std::span<const double> values, double d, std::size_t truncation) {
  require(d >= 0.0 && d <= 1.0, ErrorKind::invalid_arg, "frac_diff: d in [0,1]");
  require(truncation >= 1, ErrorKind::invalid_arg, "frac_diff: truncation >= 1");
  if (values.size() <= truncation)
    fail_data("frac_diff: series too short for truncation " + std::to_string(truncation));

  FracDiffResult res;
  res.weights.resize(truncation + 1);
  res.weights[0] = 1.0;
  double wsum = 1.0;
  for (std::size_t j = 1; j <= truncation; ++j) {
    res.weights[j] = res.weights[j - 1] * (double(j) - 1.0 - d) / double(j);
    wsum += res.weights[j];
  }
  // For d > 0 the full weight sequence sums to zero with pi_j < 0 for j >= 1,
  // so the dropped tail mass equals the retained partial sum.
  res.tail_mass = (d > 0.0) ? std::fabs(wsum) : 0.0;

  res.values.resize(values.size() - truncation);
  for (std::size_t t = truncation; t < values.size(); ++t) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= truncation; ++j) acc += res.weights[j] * values[t - j];
    res.values[t - truncation] = acc;
  }
  return res;
}

AcfReport acf_with_bands(std::span<const double> values, int max_lag) {
  require(max_lag >= 1, ErrorKind::invalid_arg, "acf_with_bands: max_lag >= 1");
  const std::size_t n = values.size();
  if (n <= std::size_t(max_lag)) fail_data("acf_with_bands: series shorter than max lag");

  const double mean = sample_mean(values);
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= double(n);
  if (var <= 0.0) fail_numeric("acf_with_bands: zero variance");

  AcfReport rep;
  rep.n = n;
  rep.bartlett_band = 1.96 / std::sqrt(double(n));
  std::size_t inside = 0;
  for (int l = 1; l <= max_lag; ++l) {
    double acc = 0.0;
    for (std::size_t k = 0; k + std::size_t(l) < n; ++k)
      acc += (values[k] - mean) * (values[k + std::size_t(l)] - mean);
    const double rho = acc / double(n) / var;
    rep.lags.push_back(l);
    rep.acf.push_back(rho);
    if (std::fabs(rho) <= rep.bartlett_band) ++inside;
  }
  rep.inside_fraction = double(inside) / double(max_lag);
  return rep;
}

std::string AcfReport::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["bartlett_band"] = bartlett_band;
  j["inside_fraction"] = inside_fraction;
  j["lags"] = lags;
  j["acf"] = acf;
  return j.dump(2);
}

}  // namespace rvol
