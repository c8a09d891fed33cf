// volkit — command-line frontend for the roughvol shared library.
//
// Every subcommand writes a JSON report (with the resolved configuration and
// library version embedded) plus plot-data CSVs into the output directory,
// and prints a short summary table to stdout.
//
// Exit codes: 0 success, 2 usage error, 3 data error, 4 numerical error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "roughvol.h"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct CliError {
  int exit_code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& msg) { throw CliError{code, msg}; }

int exit_code_of(rv_status st) {
  switch (st) {
    case RV_OK: return 0;
    case RV_ERR_INVALID_ARG: return 2;
    case RV_ERR_DATA: return 3;
    case RV_ERR_IO: return 3;
    case RV_ERR_NUMERIC: return 4;
  }
  return 4;
}

void check(rv_status st) {
  if (st != RV_OK) fail(exit_code_of(st), rv_last_error());
}

std::string take_string(char* s) {
  std::string out = s ? s : "";
  rv_string_free(s);
  return out;
}

rv_units parse_units(const std::string& u) {
  if (u == "vol") return RV_UNITS_VOL;
  if (u == "var") return RV_UNITS_VAR;
  if (u == "logvar") return RV_UNITS_LOGVAR;
  fail(2, "unknown units: " + u);
}

std::string resolve_data_path(const std::string& path) {
  if (path.empty() || fs::path(path).is_absolute() || fs::exists(path)) return path;
  if (const char* dir = std::getenv("VOLKIT_DATA_DIR")) {
    const fs::path candidate = fs::path(dir) / path;
    if (fs::exists(candidate)) return candidate.string();
  }
  return path;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  if (!out) fail(3, "cannot write " + p.string());
  out << text;
  if (!out) fail(3, "write failed: " + p.string());
}

void write_report(const fs::path& outdir, const std::string& name, const ordered_json& config,
                  const ordered_json& results) {
  ordered_json j;
  j["tool"] = "volkit";
  j["version"] = rv_version();
  j["command"] = name;
  j["config"] = config;
  j["results"] = results;
  write_text(outdir / (name + "_report.json"), j.dump(2) + "\n");
}

struct SeriesHandle {
  rv_series* s = nullptr;
  ~SeriesHandle() { rv_series_free(s); }
};

struct ReportHandle {
  rv_scaling_report* r = nullptr;
  ~ReportHandle() { rv_scaling_free(r); }
};

// Shared --data/--format/--asset/--units/--from/--to options.
struct DataArgs {
  std::string data, format = "generic-csv", asset, units = "var", from, to;

  void attach(CLI::App* cmd) {
    cmd->add_option("--data", data, "input CSV path")->required();
    cmd->add_option("--format", format, "generic-csv | oxford-man-csv");
    cmd->add_option("--asset", asset, "asset column key, e.g. SPX2.rv (oxford-man)");
    cmd->add_option("--units", units, "vol | var | logvar (default var)");
    cmd->add_option("--from", from, "inclusive ISO date lower bound");
    cmd->add_option("--to", to, "inclusive ISO date upper bound");
  }

  rv_series* load(size_t* dropped) const {
    std::string fmt = format;
    if (!asset.empty() && format == "generic-csv") fmt = "oxford-man-csv";
    rv_series* s = nullptr;
    check(rv_series_load_csv(resolve_data_path(data).c_str(), fmt.c_str(),
                             asset.empty() ? nullptr : asset.c_str(), parse_units(units),
                             from.empty() ? nullptr : from.c_str(),
                             to.empty() ? nullptr : to.c_str(), &s, dropped));
    return s;
  }

  ordered_json config() const {
    return {{"data", data}, {"format", format}, {"asset", asset},
            {"units", units}, {"from", from},   {"to", to}};
  }
};

// ---------------------------------------------------------------------------

int cmd_estimate(const DataArgs& dargs, const std::string& outdir_s, int segments) {
  const fs::path outdir(outdir_s);
  fs::create_directories(outdir);
  size_t dropped = 0;
  SeriesHandle s{dargs.load(&dropped)};

  ReportHandle rep;
  check(rv_fit_scaling(s.s, nullptr, 0, nullptr, 0, &rep.r));
  char* json = nullptr;
  check(rv_scaling_to_json(rep.r, &json));
  ordered_json results = ordered_json::parse(take_string(json));
  results["rows"] = rv_series_len(s.s);
  results["dropped_rows"] = dropped;
  results["has_gaps"] = rv_series_has_gaps(s.s) != 0;

  check(rv_scaling_write_csv(rep.r, (outdir / "scaling_fit.csv").string().c_str()));

  if (segments > 1) {
    std::vector<rv_scaling_report*> segs(static_cast<size_t>(segments), nullptr);
    check(rv_split_reestimate(s.s, segments, segs.data()));
    ordered_json arr = ordered_json::array();
    for (auto* r : segs) {
      char* sj = nullptr;
      check(rv_scaling_to_json(r, &sj));
      arr.push_back(ordered_json::parse(take_string(sj)));
      rv_scaling_free(r);
    }
    results["segments"] = arr;
  }

  ordered_json config = dargs.config();
  config["segments"] = segments;
  write_report(outdir, "estimate", config, results);

  std::printf("asset %-14s rows %-6zu dropped %zu\n", rv_series_label(s.s), rv_series_len(s.s),
              dropped);
  std::printf("hurst_hat = %.4f   nu_hat = %.4f\n", rv_scaling_hurst(rep.r), rv_scaling_nu(rep.r));
  for (size_t qi = 0; qi < rv_scaling_nq(rep.r); ++qi) {
    double z = 0, se = 0;
    check(rv_scaling_zeta(rep.r, qi, &z, &se));
    std::printf("  zeta[%zu] = %.4f (se %.4f)\n", qi, z, se);
  }
  return 0;
}

int cmd_simulate(const std::string& kind, double hurst, size_t n, double dt, uint64_t seed,
                 double nu, double alpha, double mean, double x0, const std::string& outdir_s,
                 bool binary) {
  const fs::path outdir(outdir_s);
  fs::create_directories(outdir);
  rv_path* p = nullptr;
  if (kind == "fbm") {
    check(rv_fbm_simulate(hurst, n, dt, seed, &p));
  } else if (kind == "fou") {
    check(rv_fou_simulate(hurst, n, dt, seed, nu, alpha, mean, x0, &p));
  } else {
    fail(2, "simulate: --kind must be fbm or fou");
  }
  check(rv_path_save_csv(p, (outdir / "path.csv").string().c_str()));
  if (binary) check(rv_path_save_binary(p, (outdir / "path.bin").string().c_str()));

  ordered_json config = {{"kind", kind}, {"hurst", hurst}, {"n", n},
                         {"dt", dt},     {"seed", seed},   {"nu", nu},
                         {"alpha", alpha}, {"mean", mean}, {"x0", x0}};
  const double last = rv_path_values(p)[rv_path_len(p) - 1];
  ordered_json results = {{"points", rv_path_len(p)}, {"terminal_value", last}};
  write_report(outdir, "simulate", config, results);
  std::printf("%s path: %zu points, terminal value %.6f -> %s\n", kind.c_str(), rv_path_len(p),
              last, (outdir / "path.csv").string().c_str());
  rv_path_free(p);
  return 0;
}

int cmd_forecast(const DataArgs& dargs, const std::string& outdir_s,
                 std::vector<int> horizons, bool variance, size_t window) {
  const fs::path outdir(outdir_s);
  fs::create_directories(outdir);
  size_t dropped = 0;
  SeriesHandle s{dargs.load(&dropped)};
  if (horizons.empty()) horizons = {1, 5, 20};

  rv_pratio* p = nullptr;
  check(rv_evaluate_p_ratio(s.s, horizons.data(), horizons.size(), nullptr, 0, variance ? 1 : 0,
                            window, &p));
  char* json = nullptr;
  check(rv_pratio_to_json(p, &json));
  ordered_json results = ordered_json::parse(take_string(json));

  ordered_json config = dargs.config();
  config["horizons"] = horizons;
  config["variance_targets"] = variance;
  config["training_window"] = window;
  write_report(outdir, "forecast", config, results);

  std::printf("P ratio (%s targets), H=%.3f\n", variance ? "variance" : "log-variance",
              rv_pratio_hurst(p));
  std::printf("%-8s", "model");
  for (int h : horizons) std::printf("  D=%-6d", h);
  std::printf("\n");
  for (const char* model : {"AR(5)", "AR(10)", "HAR", "RFSV"}) {
    std::printf("%-8s", model);
    for (int h : horizons) {
      double v = 0;
      check(rv_pratio_value(p, model, h, &v));
      std::printf("  %.4f ", v);
    }
    std::printf("\n");
  }
  rv_pratio_free(p);
  return 0;
}

int cmd_diagnose_memory(const DataArgs& dargs, const std::string& outdir_s, double d,
                        int max_lag, int t_max) {
  const fs::path outdir(outdir_s);
  fs::create_directories(outdir);
  size_t dropped = 0;
  SeriesHandle s{dargs.load(&dropped)};

  std::vector<int> tgrid;
  for (int t = 1; t <= t_max; ++t) tgrid.push_back(t);
  double slope = 0, intercept = 0;
  std::vector<double> lt(tgrid.size()), lvv(tgrid.size());
  size_t npts = tgrid.size();
  check(rv_vt_scaling(s.s, tgrid.data(), tgrid.size(), 10, &slope, &intercept, lt.data(),
                      lvv.data(), &npts));
  npts = std::min(npts, tgrid.size());
  {
    std::string csv = "log_t,log_v\n";
    for (size_t i = 0; i < npts; ++i)
      csv += std::to_string(lt[i]) + "," + std::to_string(lvv[i]) + "\n";
    write_text(outdir / "vt_scaling.csv", csv);
  }

  std::vector<double> acf_raw(static_cast<size_t>(max_lag));
  double band_raw = 0, inside_raw = 0;
  check(rv_acf_with_bands(s.s, max_lag, acf_raw.data(), &band_raw, &inside_raw));

  rv_series* eps = nullptr;
  double tail_mass = 0;
  check(rv_frac_diff(s.s, d, 500, &eps, &tail_mass));
  std::vector<double> acf_eps(static_cast<size_t>(max_lag));
  double band_eps = 0, inside_eps = 0;
  check(rv_acf_with_bands(eps, max_lag, acf_eps.data(), &band_eps, &inside_eps));
  rv_series_free(eps);

  {
    std::string csv = "lag,acf_logvol,acf_fracdiff,band_logvol,band_fracdiff\n";
    for (int l = 1; l <= max_lag; ++l)
      csv += std::to_string(l) + "," + std::to_string(acf_raw[static_cast<size_t>(l - 1)]) + "," +
             std::to_string(acf_eps[static_cast<size_t>(l - 1)]) + "," + std::to_string(band_raw) +
             "," + std::to_string(band_eps) + "\n";
    write_text(outdir / "acf_bands.csv", csv);
  }

  ordered_json config = dargs.config();
  config["d"] = d;
  config["max_lag"] = max_lag;
  config["t_max"] = t_max;
  ordered_json results = {{"vt_slope", slope},
                          {"vt_intercept", intercept},
                          {"vt_gamma", 2.0 - slope},
                          {"fracdiff_tail_mass", tail_mass},
                          {"acf_inside_fraction_logvol", inside_raw},
                          {"acf_inside_fraction_fracdiff", inside_eps}};
  write_report(outdir, "diagnose-memory", config, results);

  std::printf("V(t) slope = %.3f (gamma = %.3f)\n", slope, 2.0 - slope);
  std::printf("ACF inside Bartlett bands: log-vol %.2f, (1-L)^%.2f log-vol %.2f\n", inside_raw, d,
              inside_eps);
  return 0;
}

int cmd_hawkes(double mu, const std::string& kernel, double a, double decay, double t0,
               double horizon, uint64_t seed, double bin, const std::string& outdir_s) {
  const fs::path outdir(outdir_s);
  fs::create_directories(outdir);

  double l1 = 0;
  check(rv_hawkes_l1_norm(kernel.c_str(), a, decay, t0, &l1));
  rv_events* ev = nullptr;
  check(rv_hawkes_simulate(mu, kernel.c_str(), a, decay, t0, horizon, seed, &ev));
  check(rv_events_save_csv(ev, (outdir / "events.csv").string().c_str()));

  ordered_json results = {{"events", rv_events_len(ev)},
                          {"l1_norm", l1},
                          {"mean_rate", double(rv_events_len(ev)) / horizon},
                          {"stationary_rate", mu / (1.0 - l1)}};

  if (bin > 0) {
    rv_series* counts = nullptr;
    size_t floored = 0;
    check(rv_coarse_grain_to_vol(ev, bin, &counts, &floored));
    check(rv_series_save_csv(counts, (outdir / "coarse_counts.csv").string().c_str()));
    ReportHandle rep;
    check(rv_fit_scaling(counts, nullptr, 0, nullptr, 0, &rep.r));
    results["bins"] = rv_series_len(counts);
    results["floored_bins"] = floored;
    results["hurst_hat_log_counts"] = rv_scaling_hurst(rep.r);
    rv_series_free(counts);
  }

  ordered_json config = {{"mu", mu},       {"kernel", kernel}, {"a", a},
                         {"decay", decay}, {"t0", t0},         {"horizon", horizon},
                         {"seed", seed},   {"bin", bin}};
  write_report(outdir, "hawkes", config, results);

  std::printf("events = %zu over horizon %g (rate %.4f, stationary %.4f, ||phi||=%.4f)\n",
              rv_events_len(ev), horizon, double(rv_events_len(ev)) / horizon, mu / (1.0 - l1),
              l1);
  if (results.contains("hurst_hat_log_counts"))
    std::printf("hurst_hat of log bin counts = %.4f\n",
                results["hurst_hat_log_counts"].get<double>());
  rv_events_free(ev);
  return 0;
}

int cmd_smoothing_bias(double hurst, double alpha, double window, int lag_min, int lag_max,
                       const std::string& outdir_s) {
  const fs::path outdir(outdir_s);
  fs::create_directories(outdir);

  double alpha_hat = 0, hurst_hat = 0;
  check(rv_smoothing_regression(hurst, alpha, window, lag_min, lag_max, &alpha_hat, &hurst_hat));

  std::vector<double> lags, m2;
  for (int l = lag_min; l <= lag_max; ++l) lags.push_back(double(l));
  m2.resize(lags.size());
  check(rv_smoothed_m2(hurst, alpha, window, lags.data(), lags.size(), m2.data()));
  {
    std::string csv = "log_delta,log_m2\n";
    for (size_t i = 0; i < lags.size(); ++i)
      csv += std::to_string(std::log(lags[i])) + "," + std::to_string(std::log(m2[i])) + "\n";
    write_text(outdir / "smoothed_m2.csv", csv);
  }

  ordered_json config = {{"hurst", hurst},     {"alpha", alpha},   {"window", window},
                         {"lag_min", lag_min}, {"lag_max", lag_max}};
  ordered_json results = {{"alpha_hat", alpha_hat}, {"hurst_hat", hurst_hat}};
  write_report(outdir, "smoothing-bias", config, results);

  std::printf("window %.5f day: estimated alpha = %.3f, estimated H = %.3f\n", window, alpha_hat,
              hurst_hat);
  return 0;
}

int cmd_study(double hurst, double nu, double alpha, double mean, int days, int steps,
              uint64_t seed, const std::string& outdir_s) {
  const fs::path outdir(outdir_s);
  fs::create_directories(outdir);

  rv_study* st = nullptr;
  check(rv_study_run(hurst, nu, alpha, mean, days, steps, seed, &st));
  char* json = nullptr;
  check(rv_study_to_json(st, &json));
  ordered_json results = ordered_json::parse(take_string(json));

  const char* names[3] = {"study_spot.csv", "study_short_window.csv", "study_long_window.csv"};
  for (int w = 0; w < 3; ++w) {
    ReportHandle rep;
    check(rv_study_report(st, w, &rep.r));
    check(rv_scaling_write_csv(rep.r, (outdir / names[w]).string().c_str()));
  }

  ordered_json config = {{"hurst", hurst}, {"nu", nu},     {"alpha", alpha}, {"mean", mean},
                         {"days", days},   {"steps", steps}, {"seed", seed}};
  write_report(outdir, "study", config, results);

  double h0 = 0, h1 = 0, h2 = 0;
  check(rv_study_hurst(st, 0, &h0));
  check(rv_study_hurst(st, 1, &h1));
  check(rv_study_hurst(st, 2, &h2));
  std::printf("estimated H: spot %.3f | 1h window %.3f | 8h window %.3f (true %.3f)\n", h0, h1,
              h2, hurst);
  rv_study_free(st);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"volkit — rough volatility analysis toolkit"};
  app.require_subcommand(1);
  std::string outdir = ".";
  app.add_option("--out", outdir, "output directory (default .)")->capture_default_str();

  // estimate
  auto* est = app.add_subcommand("estimate", "structure-function scaling analysis of a series");
  DataArgs est_data;
  est_data.attach(est);
  int est_segments = 1;
  est->add_option("--segments", est_segments, "split the series and re-estimate per segment");

  // simulate
  auto* sim = app.add_subcommand("simulate", "simulate an fBM or fOU path");
  std::string sim_kind = "fbm";
  double sim_h = 0.14, sim_dt = 1.0, sim_nu = 0.3, sim_alpha = 5e-4, sim_mean = -5.0,
         sim_x0 = -5.0;
  size_t sim_n = 1000;
  uint64_t sim_seed = 1;
  bool sim_bin = false;
  sim->add_option("--kind", sim_kind, "fbm | fou")->capture_default_str();
  sim->add_option("--hurst", sim_h)->capture_default_str();
  sim->add_option("--n", sim_n, "grid points")->capture_default_str();
  sim->add_option("--dt", sim_dt, "time step in days")->capture_default_str();
  sim->add_option("--seed", sim_seed)->capture_default_str();
  sim->add_option("--nu", sim_nu)->capture_default_str();
  sim->add_option("--alpha", sim_alpha)->capture_default_str();
  sim->add_option("--mean", sim_mean)->capture_default_str();
  sim->add_option("--x0", sim_x0)->capture_default_str();
  sim->add_flag("--binary", sim_bin, "also write the binary block");

  // forecast
  auto* fc = app.add_subcommand("forecast", "rolling P-ratio evaluation of RFSV vs AR/HAR");
  DataArgs fc_data;
  fc_data.attach(fc);
  std::vector<int> fc_h;
  bool fc_var = false;
  size_t fc_window = 500;
  fc->add_option("--horizons", fc_h, "forecast horizons in days (default 1 5 20)")
      ->delimiter(',');
  fc->add_flag("--variance", fc_var, "evaluate on variance instead of log-variance");
  fc->add_option("--window", fc_window, "rolling training window")->capture_default_str();

  // diagnose-memory
  auto* dm = app.add_subcommand("diagnose-memory", "V(t) scaling and fractional differencing");
  DataArgs dm_data;
  dm_data.attach(dm);
  double dm_d = 0.4;
  int dm_maxlag = 50, dm_tmax = 60;
  dm->add_option("--d", dm_d, "fractional differencing order")->capture_default_str();
  dm->add_option("--max-lag", dm_maxlag)->capture_default_str();
  dm->add_option("--t-max", dm_tmax, "largest V(t) block length")->capture_default_str();

  // hawkes
  auto* hk = app.add_subcommand("hawkes", "self-exciting order-flow simulation");
  double hk_mu = 0.05, hk_a = 0.0, hk_decay = 1.6, hk_t0 = 1e-3, hk_T = 1e5, hk_bin = 0.0;
  std::string hk_kernel = "power-law";
  uint64_t hk_seed = 1;
  hk->add_option("--mu", hk_mu, "baseline intensity")->capture_default_str();
  hk->add_option("--kernel", hk_kernel, "zero | exponential | power-law")->capture_default_str();
  hk->add_option("--a", hk_a, "kernel amplitude");
  hk->add_option("--decay", hk_decay, "b (exponential) or beta (power-law)")
      ->capture_default_str();
  hk->add_option("--t0", hk_t0, "power-law cutoff")->capture_default_str();
  hk->add_option("--horizon", hk_T)->capture_default_str();
  hk->add_option("--seed", hk_seed)->capture_default_str();
  hk->add_option("--bin", hk_bin, "coarse-grain bin width (0 = skip)")->capture_default_str();
  double hk_l1 = -1.0;
  hk->add_option("--l1", hk_l1, "set amplitude from a target ||phi||_1 instead of --a");

  // smoothing-bias
  auto* sb = app.add_subcommand("smoothing-bias", "window-averaging bias in the fSS model");
  double sb_h = 0.14, sb_a = 0.3, sb_w = 1.0 / 24.0;
  int sb_lmin = 1, sb_lmax = 100;
  sb->add_option("--hurst", sb_h)->capture_default_str();
  sb->add_option("--alpha", sb_a, "fSS amplitude")->capture_default_str();
  sb->add_option("--window", sb_w, "proxy window as a day fraction")->capture_default_str();
  sb->add_option("--lag-min", sb_lmin)->capture_default_str();
  sb->add_option("--lag-max", sb_lmax)->capture_default_str();

  // study
  auto* sd = app.add_subcommand("study", "full RFSV simulation study with windowed proxies");
  double sd_h = 0.14, sd_nu = 0.3, sd_alpha = 5e-4, sd_mean = -5.0;
  int sd_days = 2000, sd_steps = 1440;
  uint64_t sd_seed = 1;
  sd->add_option("--hurst", sd_h)->capture_default_str();
  sd->add_option("--nu", sd_nu)->capture_default_str();
  sd->add_option("--alpha", sd_alpha)->capture_default_str();
  sd->add_option("--mean", sd_mean)->capture_default_str();
  sd->add_option("--days", sd_days)->capture_default_str();
  sd->add_option("--steps", sd_steps, "simulation steps per day")->capture_default_str();
  sd->add_option("--seed", sd_seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (est->parsed()) return cmd_estimate(est_data, outdir, est_segments);
    if (sim->parsed())
      return cmd_simulate(sim_kind, sim_h, sim_n, sim_dt, sim_seed, sim_nu, sim_alpha, sim_mean,
                          sim_x0, outdir, sim_bin);
    if (fc->parsed()) return cmd_forecast(fc_data, outdir, fc_h, fc_var, fc_window);
    if (dm->parsed()) return cmd_diagnose_memory(dm_data, outdir, dm_d, dm_maxlag, dm_tmax);
    if (hk->parsed()) {
      double a = hk_a;
      if (hk_l1 >= 0.0) {
        if (hk_kernel == "exponential") {
          a = hk_l1 * hk_decay;
        } else if (hk_kernel == "power-law") {
          a = hk_l1 * (hk_decay - 1.0) * std::pow(hk_t0, hk_decay - 1.0);
        } else {
          fail(2, "--l1 needs a non-zero kernel");
        }
      }
      return cmd_hawkes(hk_mu, hk_kernel, a, hk_decay, hk_t0, hk_T, hk_seed, hk_bin, outdir);
    }
    if (sb->parsed()) return cmd_smoothing_bias(sb_h, sb_a, sb_w, sb_lmin, sb_lmax, outdir);
    if (sd->parsed())
      return cmd_study(sd_h, sd_nu, sd_alpha, sd_mean, sd_days, sd_steps, sd_seed, outdir);
  } catch (const CliError& e) {
    ordered_json err = {{"error", e.message}, {"exit_code", e.exit_code}};
    std::cerr << err.dump() << "\n";
    return e.exit_code;
  } catch (const std::exception& e) {
    ordered_json err = {{"error", e.what()}, {"exit_code", 4}};
    std::cerr << err.dump() << "\n";
    return 4;
  }
  return 2;
}
