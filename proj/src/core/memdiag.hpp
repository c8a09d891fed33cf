#pragma once

#include <string>
#include <vector>

#include "core/series.hpp"

namespace rvol {

struct VtScaling {
  double slope = 0.0;       // log V(t) on log t; the Andersen-style 2 - gamma
  double intercept = 0.0;
  std::vector<double> log_t;
  std::vector<double> log_v;
};

struct VtOptions {
  std::vector<int> t_grid;       // block lengths in days; empty = 1..60
  int min_blocks = 10;
  bool overlapping = false;      // overlapping block sums instead of disjoint
};

/// V(t) = Var[sum of t consecutive daily variance proxies], estimated from
/// non-overlapping blocks by default, then log V regressed on log t.
VtScaling vt_scaling(const VolSeries& series, const VtOptions& opts = {});

struct FracDiffResult {
  std::vector<double> values;   // filtered series, length N - truncation
  double tail_mass = 0.0;       // sum over dropped weights |pi_j|, j > truncation
  std::vector<double> weights;  // pi_0..pi_K
};

/// Fractional differencing (1-L)^d with binomial weights
/// pi_j = prod_{0<k<=j} (k-1-d)/k, truncated at `truncation` lags.
FracDiffResult frac_diff(std::span<const double> values, double d, std::size_t truncation = 500);

struct AcfReport {
  std::vector<int> lags;
  std::vector<double> acf;
  double bartlett_band = 0.0;   // +-1.96/sqrt(N)
  double inside_fraction = 0.0; // share of lags 1..max within the band
  std::size_t n = 0;

  std::string to_json() const;
};

AcfReport acf_with_bands(std::span<const double> values, int max_lag);

}  // namespace rvol
