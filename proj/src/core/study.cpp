#include "core/study.hpp"

#include <cmath>

#include <json.hpp>

#include "core/fracproc.hpp"

namespace rvol {

void StudyParams::validate() const {
  require(hurst > 0.0 && hurst < 1.0, ErrorKind::invalid_arg, "StudyParams: hurst in (0,1)");
  require(nu > 0.0 && alpha >= 0.0, ErrorKind::invalid_arg, "StudyParams: nu > 0, alpha >= 0");
  require(days >= 40, ErrorKind::invalid_arg, "StudyParams: need at least 40 days");
  require(steps_per_day >= 100, ErrorKind::invalid_arg, "StudyParams: steps_per_day >= 100");
  require(tick >= 0.0 && price0 > 0.0, ErrorKind::invalid_arg,
          "StudyParams: tick >= 0, price0 > 0");
  require(short_window_len > 0.0 && long_window_len > 0.0, ErrorKind::invalid_arg,
          "StudyParams: window lengths > 0");
  require(short_window_start + short_window_len <= 1.0 &&
              long_window_start + long_window_len <= 1.0,
          ErrorKind::invalid_arg, "StudyParams: windows must fit inside the day");
  require(spot_time >= 0.0 && spot_time < 1.0, ErrorKind::invalid_arg,
          "StudyParams: spot_time in [0,1)");
}

namespace {

// Subsample-averaged realized variance: squared step-returns summed at the
// given sampling stride, averaged over all stride offsets. Uses log prices.
double subsampled_rv(std::span<const double> logp, std::size_t w0, std::size_t w1,
                     std::size_t stride) {
  if (stride < 1) stride = 1;
  double total = 0.0;
  for (std::size_t off = 0; off < stride; ++off) {
    double acc = 0.0;
    for (std::size_t i = w0 + off; i + stride <= w1; i += stride) {
      const double r = logp[i + stride] - logp[i];
      acc += r * r;
    }
    total += acc;
  }
  return total / double(stride);
}

}  // namespace

StudyProxies simulate_study_proxies(const StudyParams& p) {
  p.validate();
  const std::size_t S = std::size_t(p.steps_per_day);
  const std::size_t n = std::size_t(p.days) * S;
  const double dt = 1.0 / double(S);

  FgnSampler gen(p.hurst, n, dt);
  const auto inc = gen.sample(derive_seed(p.seed, 0));

  std::mt19937_64 rng(splitmix64(derive_seed(p.seed, 1)));
  std::normal_distribution<double> normal;

  // Joint Euler pass: log-vol recursion and the efficient price
  // P_{n+1} = P_n + P_n sigma_n sqrt(dt) U_n, observed on a tick grid.
  std::vector<double> log_obs_price(n + 1);
  std::vector<double> spot_var(std::size_t(p.days));
  const std::size_t spot_off = std::min(S - 1, std::size_t(p.spot_time * double(S)));
  const double sqdt = std::sqrt(dt);
  const double ad = p.alpha * dt;

  double x = p.mean_level;
  double price = p.price0;
  auto observe = [&](double pr) {
    return p.tick > 0.0 ? std::round(pr / p.tick) * p.tick : pr;
  };
  log_obs_price[0] = std::log(observe(price));
  for (std::size_t i = 0; i < n; ++i) {
    const double sigma = std::exp(x);
    if (i % S == spot_off) spot_var[i / S] = sigma * sigma;
    price += price * sigma * sqdt * normal(rng);
    if (price <= 0.0) fail_numeric("simulate_study_proxies: price hit zero");
    x += p.nu * inc[i] + ad * (p.mean_level - x);
    log_obs_price[i + 1] = std::log(observe(price));
  }

  const std::size_t day_steps = S;
  auto window_rv = [&](double start, double len, int minutes) {
    const std::size_t w0 = std::size_t(std::round(start * double(day_steps)));
    const std::size_t w1 =
        std::min(day_steps, w0 + std::size_t(std::round(len * double(day_steps))));
    const std::size_t stride =
        std::max<std::size_t>(1, std::size_t(minutes) * day_steps / 1440);
    std::vector<double> rv(std::size_t(p.days));
    for (int d = 0; d < p.days; ++d) {
      const std::size_t base = std::size_t(d) * day_steps;
      const double v = subsampled_rv(log_obs_price, base + w0, base + w1, stride) / len;
      rv[std::size_t(d)] = std::max(v, 1e-300);
    }
    return rv;
  };

  StudyProxies out;
  out.spot = make_series(std::move(spot_var), Units::var, "spot");
  out.short_rv = make_series(window_rv(p.short_window_start, p.short_window_len,
                                       p.short_sample_minutes),
                             Units::var, "short-window-rv");
  out.long_rv = make_series(window_rv(p.long_window_start, p.long_window_len,
                                      p.long_sample_minutes),
                            Units::var, "long-window-rv");
  return out;
}

StudyReport run_simulation_study(const StudyParams& p) {
  StudyReport rep;
  rep.params = p;
  auto proxies = simulate_study_proxies(p);
  rep.spot = fit_scaling(proxies.spot);
  rep.short_rv = fit_scaling(proxies.short_rv);
  rep.long_rv = fit_scaling(proxies.long_rv);
  return rep;
}

std::string StudyReport::to_json() const {
  nlohmann::ordered_json j;
  j["params"] = {{"hurst", params.hurst},
                 {"nu", params.nu},
                 {"alpha", params.alpha},
                 {"mean_level", params.mean_level},
                 {"days", params.days},
                 {"steps_per_day", params.steps_per_day},
                 {"tick", params.tick},
                 {"price0", params.price0},
                 {"seed", params.seed},
                 {"price_noise", "tick-grid rounding in place of the uncertainty-zones scheme"}};
  j["spot"] = nlohmann::ordered_json::parse(spot.to_json());
  j["short_window"] = nlohmann::ordered_json::parse(short_rv.to_json());
  j["long_window"] = nlohmann::ordered_json::parse(long_rv.to_json());
  return j.dump(2);
}

}  // namespace rvol
