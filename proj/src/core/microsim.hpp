#pragma once

#include <cstdint>
#include <vector>

#include "core/series.hpp"

namespace rvol {

enum class HawkesKernel { zero, exponential, power_law };

struct HawkesParams {
  double mu = 1.0;  // baseline intensity, events per unit time
  HawkesKernel kernel = HawkesKernel::zero;
  double amplitude = 0.0;  // a
  double decay = 1.0;      // b (exponential) or beta > 1 (power law)
  double cutoff = 1e-3;    // t0 for the power-law kernel (t + t0)^{-beta}
  double horizon = 1.0;
  std::uint64_t seed = 0;
  std::size_t max_events = 50'000'000;  // runaway guard

  void validate() const;
  double l1_norm() const;  // ||phi||_1; must be < 1 for stability
};

struct EventStream {
  std::vector<double> jump_times;
  HawkesParams params;
};

/// Ogata thinning. Every kernel here is completely monotone, so between events
/// the intensity decreases and the value at the current time is an exact upper
/// bound, refreshed at every proposal. The power-law kernel is evaluated
/// through an exponential-mixture quadrature of its Gamma-integral
/// representation (relative error <= 2e-4 on ages up to where the remaining
/// tail mass is below 1e-6 of ||phi||_1, older contributions dropped), which
/// keeps the per-proposal intensity update O(number of mixture terms).
EventStream hawkes_simulate(const HawkesParams& params);

void save_events_csv(const EventStream& s, const std::string& path);

struct CoarseGrainResult {
  VolSeries series;            // per-bin counts in variance units
  std::size_t floored_bins = 0;  // empty bins floored at 0.5 events
  double bin_width = 0.0;
};

/// Bins event counts as an integrated-variance proxy; at least 100 bins.
CoarseGrainResult coarse_grain_to_vol(const EventStream& stream, double bin_width);

/// The exponential-mixture approximation of (t+t0)^{-beta}, exposed for tests.
struct ExpMixture {
  std::vector<double> rates;    // x_m
  std::vector<double> weights;  // w_m: kernel(t) ~ sum w_m exp(-x_m t)

  double value(double t) const;
  double l1() const;
};

ExpMixture power_law_mixture(double beta, double cutoff);

}  // namespace rvol
