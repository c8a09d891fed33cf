#include "core/fracproc.hpp"

#include <fftw3.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_gamma.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>

namespace rvol {

using std::numbers::pi;

void FbmParams::validate() const {
  require(hurst > 0.0 && hurst < 1.0, ErrorKind::invalid_arg, "FbmParams: hurst must be in (0,1)");
  require(n_points >= 2, ErrorKind::invalid_arg, "FbmParams: n_points must be >= 2");
  require(dt > 0.0, ErrorKind::invalid_arg, "FbmParams: dt must be > 0");
}

void FouParams::validate() const {
  fbm.validate();
  require(nu > 0.0, ErrorKind::invalid_arg, "FouParams: nu must be > 0");
  require(alpha >= 0.0, ErrorKind::invalid_arg, "FouParams: alpha must be >= 0");
}

double fbm_covariance(double hurst, double s, double t) {
  const double h2 = 2.0 * hurst;
  return 0.5 * (std::pow(std::fabs(s), h2) + std::pow(std::fabs(t), h2) -
                std::pow(std::fabs(s - t), h2));
}

// ---------------------------------------------------------------------------
// Circulant embedding
// ---------------------------------------------------------------------------

struct FgnSampler::Plan {
  fftw_plan c2r = nullptr;
  double* out = nullptr;
  fftw_complex* in = nullptr;
  std::size_t m = 0;

  ~Plan() {
    if (c2r) fftw_destroy_plan(c2r);
    if (out) fftw_free(out);
    if (in) fftw_free(in);
  }
};

namespace {

// fGn autocovariance at integer lag k, time step dt.
double fgn_gamma(double hurst, double k, double dt) {
  const double h2 = 2.0 * hurst;
  return 0.5 *
         (std::pow(k + 1.0, h2) - 2.0 * std::pow(k, h2) + std::pow(std::fabs(k - 1.0), h2)) *
         std::pow(dt, h2);
}

// Eigenvalues of the circulant embedding of size m; empty result if the
// embedding is not nonnegative definite.
std::vector<double> embedding_eigenvalues(double hurst, double dt, std::size_t m) {
  std::vector<double> row(m);
  const std::size_t half = m / 2;
  for (std::size_t j = 0; j <= half; ++j) row[j] = fgn_gamma(hurst, double(j), dt);
  for (std::size_t j = half + 1; j < m; ++j) row[j] = row[m - j];

  std::vector<double> lam(half + 1);
  double* in = fftw_alloc_real(m);
  fftw_complex* out = fftw_alloc_complex(half + 1);
  fftw_plan p = fftw_plan_dft_r2c_1d(int(m), in, out, FFTW_ESTIMATE);
  std::memcpy(in, row.data(), m * sizeof(double));
  fftw_execute(p);
  double maxlam = 0.0, minlam = 0.0;
  for (std::size_t j = 0; j <= half; ++j) {
    lam[j] = out[j][0];
    maxlam = std::max(maxlam, lam[j]);
    minlam = std::min(minlam, lam[j]);
  }
  fftw_destroy_plan(p);
  fftw_free(in);
  fftw_free(out);

  if (minlam < -1e-10 * maxlam) return {};
  for (double& l : lam) l = std::max(l, 0.0);
  return lam;
}

}  // namespace

FgnSampler::FgnSampler(double hurst, std::size_t n_increments, double dt) : n_(n_increments) {
  require(hurst > 0.0 && hurst < 1.0, ErrorKind::invalid_arg, "FgnSampler: hurst in (0,1)");
  require(n_increments >= 1, ErrorKind::invalid_arg, "FgnSampler: need at least one increment");

  std::size_t m = 1;
  while (m < 2 * n_) m <<= 1;

  std::vector<double> lam;
  int doublings = 0;
  for (; doublings < 8; ++doublings, m <<= 1) {
    lam = embedding_eigenvalues(hurst, dt, m);
    if (!lam.empty()) break;
  }
  if (lam.empty())
    fail_numeric("fbm_simulate: circulant embedding not nonnegative definite after retries");

  m_ = m;
  const std::size_t half = m_ / 2;
  sqrt_lambda_.resize(half + 1);
  for (std::size_t j = 0; j <= half; ++j) sqrt_lambda_[j] = std::sqrt(lam[j] / (2.0 * double(m_)));

  plan_ = std::make_unique<Plan>();
  plan_->m = m_;
  plan_->in = fftw_alloc_complex(half + 1);
  plan_->out = fftw_alloc_real(m_);
  plan_->c2r = fftw_plan_dft_c2r_1d(int(m_), plan_->in, plan_->out, FFTW_ESTIMATE);
}

FgnSampler::~FgnSampler() = default;

std::vector<double> FgnSampler::sample(std::uint64_t seed) const {
  const std::size_t half = m_ / 2;
  std::mt19937_64 rng(splitmix64(seed));
  std::normal_distribution<double> normal;

  static const double sqrt2 = std::sqrt(2.0);
  plan_->in[0][0] = sqrt2 * sqrt_lambda_[0] * normal(rng);
  plan_->in[0][1] = 0.0;
  for (std::size_t j = 1; j < half; ++j) {
    plan_->in[j][0] = sqrt_lambda_[j] * normal(rng);
    plan_->in[j][1] = sqrt_lambda_[j] * normal(rng);
  }
  plan_->in[half][0] = sqrt2 * sqrt_lambda_[half] * normal(rng);
  plan_->in[half][1] = 0.0;

  fftw_execute(plan_->c2r);
  return std::vector<double>(plan_->out, plan_->out + n_);
}

GaussianPath fbm_simulate(const FbmParams& params) {
  params.validate();
  FgnSampler gen(params.hurst, params.n_points - 1, params.dt);
  const auto inc = gen.sample(params.seed);

  GaussianPath p;
  p.params = params;
  p.times.resize(params.n_points);
  p.values.resize(params.n_points);
  p.values[0] = 0.0;
  p.times[0] = 0.0;
  for (std::size_t i = 1; i < params.n_points; ++i) {
    p.times[i] = double(i) * params.dt;
    p.values[i] = p.values[i - 1] + inc[i - 1];
  }
  return p;
}

GaussianPath fou_simulate(const FouParams& params) {
  params.validate();
  FgnSampler gen(params.fbm.hurst, params.fbm.n_points - 1, params.fbm.dt);
  const auto inc = gen.sample(params.fbm.seed);

  GaussianPath p;
  p.params = params;
  p.times.resize(params.fbm.n_points);
  p.values.resize(params.fbm.n_points);
  p.times[0] = 0.0;
  p.values[0] = params.x0;
  const double ad = params.alpha * params.fbm.dt;
  for (std::size_t i = 1; i < params.fbm.n_points; ++i) {
    p.times[i] = double(i) * params.fbm.dt;
    p.values[i] =
        p.values[i - 1] + params.nu * inc[i - 1] + ad * (params.mean_level - p.values[i - 1]);
  }
  return p;
}

// ---------------------------------------------------------------------------
// fOU covariance engine
// ---------------------------------------------------------------------------

namespace {

struct SpectralCtx {
  double hurst, alpha, lag, p;
};

double spectral_integrand(double x, void* raw) {
  const auto* c = static_cast<SpectralCtx*>(raw);
  return std::cos(c->lag * x) * std::pow(x, 1.0 - 2.0 * c->hurst) /
         (c->alpha * c->alpha + x * x);
}

// Near-origin piece after the substitution x = u^{1/(2-2H)}; the measure
// x^{1-2H} dx collapses to du/(2-2H), so the integrand is bounded.
double substituted_integrand(double u, void* raw) {
  const auto* c = static_cast<SpectralCtx*>(raw);
  const double x = std::pow(u, c->p);
  return std::cos(c->lag * x) / (c->alpha * c->alpha + x * x);
}

// Tail without the cosine weight, for lag = 0.
double plain_tail_integrand(double x, void* raw) {
  const auto* c = static_cast<SpectralCtx*>(raw);
  return std::pow(x, 1.0 - 2.0 * c->hurst) / (c->alpha * c->alpha + x * x);
}

struct GslWs {
  gsl_integration_workspace* w = nullptr;
  explicit GslWs(std::size_t n) : w(gsl_integration_workspace_alloc(n)) {}
  ~GslWs() { gsl_integration_workspace_free(w); }
};

void ensure_gsl_quiet() {
  static bool done = [] {
    gsl_set_error_handler_off();
    return true;
  }();
  (void)done;
}

}  // namespace

double fou_stationary_variance(double hurst, double nu, double alpha) {
  require(hurst > 0.0 && hurst < 1.0, ErrorKind::invalid_arg, "fou: hurst in (0,1)");
  require(nu > 0.0 && alpha > 0.0, ErrorKind::invalid_arg, "fou: nu > 0, alpha > 0");
  return 0.5 * nu * nu * std::tgamma(2.0 * hurst + 1.0) * std::pow(alpha, -2.0 * hurst);
}

double fou_autocov(double hurst, double nu, double alpha, double lag) {
  ensure_gsl_quiet();
  require(hurst > 0.0 && hurst < 1.0, ErrorKind::invalid_arg, "fou_autocov: hurst in (0,1)");
  require(nu > 0.0 && alpha > 0.0, ErrorKind::invalid_arg, "fou_autocov: nu > 0, alpha > 0");
  require(lag >= 0.0, ErrorKind::invalid_arg, "fou_autocov: lag >= 0");

  const double K = nu * nu * std::tgamma(2.0 * hurst + 1.0) * std::sin(pi * hurst) / (2.0 * pi);
  const double scale = fou_stationary_variance(hurst, nu, alpha);
  const double rel_tol = 1e-9;
  const double abs_tol = 1e-13 * std::max(scale, 1e-300);

  SpectralCtx ctx{hurst, alpha, lag, 1.0 / (2.0 - 2.0 * hurst)};

  // [0, alpha] with the endpoint substitution
  GslWs ws1(4096);
  gsl_function f1{&substituted_integrand, &ctx};
  double head = 0, err1 = 0;
  const double ulim = std::pow(alpha, 2.0 - 2.0 * hurst);
  int rc = gsl_integration_qag(&f1, 0.0, ulim, abs_tol, rel_tol, 4096, GSL_INTEG_GAUSS61,
                               ws1.w, &head, &err1);
  head /= (2.0 - 2.0 * hurst);
  err1 /= (2.0 - 2.0 * hurst);
  if (rc != 0) fail_numeric("fou_autocov: quadrature-nonconvergence on [0,alpha]");

  // [alpha, inf)
  double tail = 0, err2 = 0;
  if (lag == 0.0) {
    GslWs ws2(4096);
    gsl_function f2{&plain_tail_integrand, &ctx};
    rc = gsl_integration_qagiu(&f2, alpha, abs_tol, rel_tol, 4096, ws2.w, &tail, &err2);
    if (rc != 0) fail_numeric("fou_autocov: quadrature-nonconvergence on tail");
  } else {
    GslWs ws2(4096);
    GslWs cyc(4096);
    gsl_integration_qawo_table* tbl =
        gsl_integration_qawo_table_alloc(lag, 1.0, GSL_INTEG_COSINE, 64);
    gsl_function f2{&plain_tail_integrand, &ctx};
    rc = gsl_integration_qawf(&f2, alpha, abs_tol, 4096, ws2.w, cyc.w, tbl, &tail, &err2);
    gsl_integration_qawo_table_free(tbl);
    if (rc != 0) fail_numeric("fou_autocov: oscillatory quadrature did not converge");
  }

  const double cov = 2.0 * K * (head + tail);
  const double est_err = 2.0 * K * (err1 + err2);
  if (est_err > 1e-6 * std::max(std::fabs(cov), abs_tol / rel_tol))
    fail_numeric("fou_autocov: estimated quadrature error above tolerance");
  return cov;
}

namespace {

// int_0^z e^u u^{s-1} du as a power series; converges for all z >= 0, s > 0.
double lower_exp_integral(double s, double z) {
  if (z <= 0.0) return 0.0;
  double term = std::pow(z, s) / s;  // n = 0
  double sum = term;
  for (int n = 1; n < 4000; ++n) {
    term *= z / double(n) * (s + double(n) - 1.0) / (s + double(n));
    sum += term;
    if (std::fabs(term) < 1e-17 * std::fabs(sum) && double(n) > z) break;
  }
  return sum;
}

}  // namespace

double fou_autocov_closed_form(double hurst, double nu, double alpha, double lag) {
  require(hurst > 0.5 && hurst < 1.0, ErrorKind::invalid_arg,
          "fou_autocov_closed_form: valid for hurst in (1/2,1) only");
  require(nu > 0.0 && alpha > 0.0 && lag >= 0.0, ErrorKind::invalid_arg,
          "fou_autocov_closed_form: nu > 0, alpha > 0, lag >= 0");
  const double s = 2.0 * hurst - 1.0;
  const double z = alpha * lag;
  const double g = std::tgamma(s);
  const double upper = gsl_sf_gamma_inc(s, z);  // int_z^inf e^{-u} u^{s-1} du
  const double braces = std::exp(-z) * (g + lower_exp_integral(s, z)) + std::exp(z) * upper;
  return hurst * s * nu * nu / (2.0 * std::pow(alpha, 2.0 * hurst)) * braces;
}

double lognormal_vol_cov(double hurst, double nu, double alpha, double mean_level, double lag,
                         bool small_alpha_approx) {
  const double var = fou_stationary_variance(hurst, nu, alpha);
  double expo;
  if (small_alpha_approx) {
    expo = 2.0 * mean_level + 2.0 * var - 0.5 * nu * nu * std::pow(lag, 2.0 * hurst);
  } else {
    expo = 2.0 * mean_level + var + fou_autocov(hurst, nu, alpha, lag);
  }
  if (expo > 700.0) fail_numeric("lognormal_vol_cov: exponent overflow, Var[X] too large");
  return std::exp(expo);
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

void save_path_csv(const GaussianPath& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail_io("cannot write " + path);
  out << "time,value\n";
  for (std::size_t i = 0; i < p.values.size(); ++i)
    out << format_double(p.times[i]) << ',' << format_double(p.values[i]) << '\n';
  if (!out) fail_io("write failed: " + path);
}

namespace {

constexpr char kMagic[8] = {'R', 'V', 'P', 'A', 'T', 'H', '0', '1'};

void put_u64(std::ofstream& o, std::uint64_t v) { o.write(reinterpret_cast<const char*>(&v), 8); }
void put_f64(std::ofstream& o, double v) { o.write(reinterpret_cast<const char*>(&v), 8); }
std::uint64_t get_u64(std::ifstream& i) {
  std::uint64_t v = 0;
  i.read(reinterpret_cast<char*>(&v), 8);
  return v;
}
double get_f64(std::ifstream& i) {
  double v = 0;
  i.read(reinterpret_cast<char*>(&v), 8);
  return v;
}

}  // namespace

// Little-endian layout: magic, kind u64 (0 fbm / 1 fou), params, count, times, values.
void save_path_binary(const GaussianPath& p, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail_io("cannot write " + path);
  out.write(kMagic, 8);
  const bool is_fou = std::holds_alternative<FouParams>(p.params);
  put_u64(out, is_fou ? 1 : 0);
  const FbmParams& fb = is_fou ? std::get<FouParams>(p.params).fbm : std::get<FbmParams>(p.params);
  put_f64(out, fb.hurst);
  put_u64(out, fb.n_points);
  put_f64(out, fb.dt);
  put_u64(out, fb.seed);
  if (is_fou) {
    const FouParams& fo = std::get<FouParams>(p.params);
    put_f64(out, fo.nu);
    put_f64(out, fo.alpha);
    put_f64(out, fo.mean_level);
    put_f64(out, fo.x0);
  }
  put_u64(out, p.values.size());
  out.write(reinterpret_cast<const char*>(p.times.data()), 8 * std::streamsize(p.times.size()));
  out.write(reinterpret_cast<const char*>(p.values.data()), 8 * std::streamsize(p.values.size()));
  if (!out) fail_io("write failed: " + path);
}

GaussianPath load_path_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_io("cannot open " + path);
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0) fail_data(path + ": not a path binary");
  const std::uint64_t kind = get_u64(in);
  FbmParams fb;
  fb.hurst = get_f64(in);
  fb.n_points = get_u64(in);
  fb.dt = get_f64(in);
  fb.seed = get_u64(in);
  GaussianPath p;
  if (kind == 1) {
    FouParams fo;
    fo.fbm = fb;
    fo.nu = get_f64(in);
    fo.alpha = get_f64(in);
    fo.mean_level = get_f64(in);
    fo.x0 = get_f64(in);
    p.params = fo;
  } else {
    p.params = fb;
  }
  const std::uint64_t n = get_u64(in);
  p.times.resize(n);
  p.values.resize(n);
  in.read(reinterpret_cast<char*>(p.times.data()), 8 * std::streamsize(n));
  in.read(reinterpret_cast<char*>(p.values.data()), 8 * std::streamsize(n));
  if (!in) fail_data(path + ": truncated path binary");
  return p;
}

}  // namespace rvol
