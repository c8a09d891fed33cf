#include "core/microsim.hpp"

#include <cmath>
#include <fstream>

namespace rvol {

void HawkesParams::validate() const {
  require(mu > 0.0, ErrorKind::invalid_arg, "HawkesParams: mu > 0");
  require(horizon > 0.0, ErrorKind::invalid_arg, "HawkesParams: horizon > 0");
  if (kernel == HawkesKernel::exponential) {
    require(amplitude >= 0.0 && decay > 0.0, ErrorKind::invalid_arg,
            "HawkesParams: exponential kernel needs a >= 0, b > 0");
  } else if (kernel == HawkesKernel::power_law) {
    require(amplitude >= 0.0 && decay > 1.0 && cutoff > 0.0, ErrorKind::invalid_arg,
            "HawkesParams: power-law kernel needs a >= 0, beta > 1, t0 > 0");
  }
  if (kernel != HawkesKernel::zero)
    require(l1_norm() < 1.0, ErrorKind::invalid_arg,
            "HawkesParams: unstable kernel, ||phi||_1 must be < 1");
}

double HawkesParams::l1_norm() const {
  switch (kernel) {
    case HawkesKernel::zero: return 0.0;
    case HawkesKernel::exponential: return amplitude / decay;
    case HawkesKernel::power_law:
      return amplitude * std::pow(cutoff, 1.0 - decay) / (decay - 1.0);
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Exponential mixture for the power-law kernel
// ---------------------------------------------------------------------------

namespace {

// 12-point Gauss-Legendre on [-1,1] (per-decade rule below).
constexpr int kMixGL = 12;
constexpr double kMixNodes[kMixGL] = {
    -0.9815606342467192, -0.9041172563704749, -0.7699026741943047, -0.5873179542866175,
    -0.3678314989981802, -0.1252334085114689, 0.1252334085114689,  0.3678314989981802,
    0.5873179542866175,  0.7699026741943047,  0.9041172563704749,  0.9815606342467192};
constexpr double kMixWeights[kMixGL] = {
    0.0471753363865118, 0.1069393259953184, 0.1600783285433462, 0.2031674267230659,
    0.2334925365383548, 0.2491470458134028, 0.2491470458134028, 0.2334925365383548,
    0.2031674267230659, 0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

}  // namespace

double ExpMixture::value(double t) const {
  double acc = 0.0;
  for (std::size_t m = 0; m < rates.size(); ++m) acc += weights[m] * std::exp(-rates[m] * t);
  return acc;
}

double ExpMixture::l1() const {
  double acc = 0.0;
  for (std::size_t m = 0; m < rates.size(); ++m) acc += weights[m] / rates[m];
  return acc;
}

// (t+t0)^{-beta} = (1/Gamma(beta)) int_0^inf x^{beta-1} e^{-t0 x} e^{-t x} dx,
// discretized per decade of x. The smallest rate bounds the age at which the
// mixture (and hence the retained kernel mass) effectively truncates: decades
// are chosen so the dropped tail is below 1e-6 of ||phi||_1.
ExpMixture power_law_mixture(double beta, double cutoff) {
  require(beta > 1.0 && cutoff > 0.0, ErrorKind::invalid_arg,
          "power_law_mixture: beta > 1, cutoff > 0");
  // Tail mass beyond age A is ((A+t0)/t0)^{1-beta} of the total; 1e-6 needs
  // A ~ t0 * 10^{6/(beta-1)}. Cover x from 1/A down across to well above 1/t0.
  const double age_max = cutoff * std::pow(10.0, 6.0 / (beta - 1.0) + 1.0);
  const double x_lo = 1.0 / age_max;
  const double x_hi = 1e3 / cutoff;
  const int decades = int(std::ceil(std::log10(x_hi / x_lo)));

  ExpMixture mix;
  mix.rates.reserve(std::size_t(decades) * kMixGL);
  mix.weights.reserve(std::size_t(decades) * kMixGL);
  const double ln10 = std::log(10.0);
  const double gb = std::tgamma(beta);
  for (int d = 0; d < decades; ++d) {
    const double a = std::log(x_lo) + d * ln10;
    const double mid = a + 0.5 * ln10, half = 0.5 * ln10;
    for (int i = 0; i < kMixGL; ++i) {
      const double x = std::exp(mid + half * kMixNodes[i]);
      mix.rates.push_back(x);
      mix.weights.push_back(kMixWeights[i] * half * std::pow(x, beta) * std::exp(-cutoff * x) / gb);
    }
  }
  return mix;
}

// ---------------------------------------------------------------------------
// Thinning
// ---------------------------------------------------------------------------

EventStream hawkes_simulate(const HawkesParams& params) {
  params.validate();
  EventStream out;
  out.params = params;

  std::mt19937_64 rng(splitmix64(params.seed));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto exp_draw = [&](double rate) { return -std::log1p(-unif(rng)) / rate; };

  if (params.kernel == HawkesKernel::zero) {
    double t = 0.0;
    while (true) {
      t += exp_draw(params.mu);
      if (t >= params.horizon || out.jump_times.size() >= params.max_events) break;
      out.jump_times.push_back(t);
    }
    if (out.jump_times.size() >= params.max_events)
      fail_numeric("hawkes_simulate: event budget exhausted");
    return out;
  }

  if (params.kernel == HawkesKernel::exponential) {
    // lambda(t) = mu + a Z(t), Z decays by e^{-b dt} between events.
    double t = 0.0, z = 0.0;
    while (true) {
      const double bound = params.mu + params.amplitude * z;
      const double w = exp_draw(bound);
      z *= std::exp(-params.decay * w);
      t += w;
      if (t >= params.horizon) break;
      if (unif(rng) * bound <= params.mu + params.amplitude * z) {
        out.jump_times.push_back(t);
        z += 1.0;
        if (out.jump_times.size() >= params.max_events)
          fail_numeric("hawkes_simulate: event budget exhausted");
      }
    }
    return out;
  }

  // Power law through the exponential mixture.
  const ExpMixture mix = power_law_mixture(params.decay, params.cutoff);
  const std::size_t M = mix.rates.size();
  std::vector<double> y(M, 0.0);  // y_m = sum_i e^{-x_m (t - J_i)}
  std::vector<double> decay_buf(M);
  auto mix_sum = [&]() {
    double acc = 0.0;
    for (std::size_t m = 0; m < M; ++m) acc += mix.weights[m] * y[m];
    return acc;
  };

  double t = 0.0;
  while (true) {
    const double bound = params.mu + params.amplitude * mix_sum();
    const double w = exp_draw(bound);
    t += w;
    if (t >= params.horizon) break;
    for (std::size_t m = 0; m < M; ++m) y[m] *= std::exp(-mix.rates[m] * w);
    if (unif(rng) * bound <= params.mu + params.amplitude * mix_sum()) {
      out.jump_times.push_back(t);
      for (std::size_t m = 0; m < M; ++m) y[m] += 1.0;
      if (out.jump_times.size() >= params.max_events)
        fail_numeric("hawkes_simulate: event budget exhausted");
    }
  }
  return out;
}

void save_events_csv(const EventStream& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail_io("cannot write " + path);
  out << "time\n";
  for (double t : s.jump_times) out << format_double(t) << '\n';
  if (!out) fail_io("write failed: " + path);
}

CoarseGrainResult coarse_grain_to_vol(const EventStream& stream, double bin_width) {
  require(bin_width > 0.0, ErrorKind::invalid_arg, "coarse_grain_to_vol: bin width > 0");
  const double horizon = stream.params.horizon;
  const std::size_t nbins = std::size_t(horizon / bin_width);
  if (nbins < 100)
    fail_data("coarse_grain_to_vol: needs at least 100 bins, got " + std::to_string(nbins));

  std::vector<double> counts(nbins, 0.0);
  for (double t : stream.jump_times) {
    const std::size_t b = std::size_t(t / bin_width);
    if (b < nbins) counts[b] += 1.0;
  }
  CoarseGrainResult res;
  res.bin_width = bin_width;
  for (double& c : counts) {
    if (c == 0.0) {
      c = 0.5;  // zero bins carry information; flooring keeps logs finite
      ++res.floored_bins;
    }
  }
  res.series = make_series(std::move(counts), Units::var, "hawkes-counts");
  return res;
}

}  // namespace rvol
