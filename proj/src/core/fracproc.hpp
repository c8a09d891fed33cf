#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "core/common.hpp"

namespace rvol {

struct FbmParams {
  double hurst = 0.5;
  std::size_t n_points = 2;  // grid points including t = 0
  double dt = 1.0;           // days
  std::uint64_t seed = 0;

  void validate() const;
};

struct FouParams {
  FbmParams fbm;
  double nu = 1.0;          // vol of vol
  double alpha = 0.0;       // mean reversion per unit time; 0 = pure fBM dynamics
  double mean_level = 0.0;  // m
  double x0 = 0.0;

  void validate() const;
};

struct GaussianPath {
  std::vector<double> times;
  std::vector<double> values;
  std::variant<FbmParams, FouParams> params;
};

/// Closed-form fBM covariance E[W_s W_t] = (|s|^2H + |t|^2H - |s-t|^2H)/2.
double fbm_covariance(double hurst, double s, double t);

/// Stationary fGn sampler by circulant embedding; the finite-dimensional law
/// of the output increments is exact. Embedding eigenvalues are cached so a
/// batch of paths on the same grid pays the setup FFT once.
class FgnSampler {
public:
  FgnSampler(double hurst, std::size_t n_increments, double dt);
  ~FgnSampler();
  FgnSampler(const FgnSampler&) = delete;
  FgnSampler& operator=(const FgnSampler&) = delete;

  std::vector<double> sample(std::uint64_t seed) const;
  std::size_t embedding_size() const { return m_; }

private:
  std::size_t n_;
  std::size_t m_ = 0;
  std::vector<double> sqrt_lambda_;  // sqrt(eigenvalue/(2m)), length m/2+1
  struct Plan;
  std::unique_ptr<Plan> plan_;
};

GaussianPath fbm_simulate(const FbmParams& params);

/// Euler recursion on top of the exact fBM increments:
///   X_{n+1} = X_n + nu dW^H_n + alpha dt (m - X_n).
/// With alpha = 0 the output is exactly x0 + nu W^H.
GaussianPath fou_simulate(const FouParams& params);

/// Stationary fOU autocovariance Cov[X_{t+lag}, X_t] from the spectral
/// integral  K int e^{i lag x} |x|^{1-2H} / (alpha^2 + x^2) dx,
/// K = nu^2 Gamma(2H+1) sin(pi H) / (2 pi). Valid for all H in (0,1).
double fou_autocov(double hurst, double nu, double alpha, double lag);

/// Closed form of the same autocovariance, valid for H > 1/2 only
/// (incomplete-gamma representation); used as a cross-check.
double fou_autocov_closed_form(double hurst, double nu, double alpha, double lag);

/// Stationary variance Var[X_t] (= fou_autocov at lag 0, but cheaper).
double fou_stationary_variance(double hurst, double nu, double alpha);

/// Lognormal second moment E[sigma_{t+lag} sigma_t] for sigma = exp(X) with X
/// the stationary fOU. With small_alpha_approx the small-alpha form
/// exp{2E + 2Var} exp{-nu^2 lag^{2H} / 2} is returned instead.
double lognormal_vol_cov(double hurst, double nu, double alpha, double mean_level, double lag,
                         bool small_alpha_approx = false);

// Path serialization: CSV (time,value) and a compact little-endian binary
// block with the generation parameters in the header. Both round-trip exactly.
void save_path_csv(const GaussianPath& p, const std::string& path);
void save_path_binary(const GaussianPath& p, const std::string& path);
GaussianPath load_path_binary(const std::string& path);

}  // namespace rvol
