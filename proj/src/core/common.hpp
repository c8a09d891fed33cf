#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rvol {

// Error taxonomy mirrored by the C API status codes.
enum class ErrorKind { invalid_arg = 1, data = 2, numeric = 3, io = 4 };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail_invalid(const std::string& msg) { throw Error(ErrorKind::invalid_arg, msg); }
[[noreturn]] inline void fail_data(const std::string& msg) { throw Error(ErrorKind::data, msg); }
[[noreturn]] inline void fail_numeric(const std::string& msg) { throw Error(ErrorKind::numeric, msg); }
[[noreturn]] inline void fail_io(const std::string& msg) { throw Error(ErrorKind::io, msg); }

inline void require(bool cond, ErrorKind kind, const std::string& msg) {
  if (!cond) throw Error(kind, msg);
}

// ---------------------------------------------------------------------------
// Seeding
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Per-task seed from a master seed and a task index; tasks drawn from the same
// master never share a stream regardless of scheduling order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 0x51ed2701a9e3d2bdULL));
}

// ---------------------------------------------------------------------------
// Small numerics shared across modules
// ---------------------------------------------------------------------------

// E|Z|^q for Z standard normal: 2^{q/2} Gamma((q+1)/2) / sqrt(pi)
inline double gaussian_abs_moment(double q) {
  if (q < 0.0) fail_invalid("gaussian_abs_moment: q must be >= 0");
  return std::pow(2.0, 0.5 * q) * std::tgamma(0.5 * (q + 1.0)) / std::sqrt(std::numbers::pi);
}

struct LinFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double r2 = 0.0;
};

inline LinFit ols_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) fail_invalid("ols_line: need two same-length samples of size >= 2");
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) { sx += x[i]; sy += y[i]; }
  const double mx = sx / double(n), my = sy / double(n);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0.0) fail_numeric("ols_line: degenerate abscissa");
  LinFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (f.intercept + f.slope * x[i]);
    sse += e * e;
  }
  if (n > 2) f.slope_stderr = std::sqrt(sse / double(n - 2) / sxx);
  f.r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  return f;
}

struct MomentStats {
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  std::size_t count = 0;
};

inline MomentStats sample_moments(std::span<const double> x) {
  MomentStats s;
  s.count = x.size();
  if (x.empty()) return s;
  double m = 0;
  for (double v : x) m += v;
  m /= double(x.size());
  double m2 = 0, m3 = 0, m4 = 0;
  for (double v : x) {
    const double d = v - m;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= double(x.size());
  m3 /= double(x.size());
  m4 /= double(x.size());
  s.mean = m;
  s.variance = m2;
  if (m2 > 0) {
    s.skewness = m3 / std::pow(m2, 1.5);
    s.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  }
  return s;
}

inline double sample_mean(std::span<const double> x) {
  double m = 0;
  for (double v : x) m += v;
  return x.empty() ? 0.0 : m / double(x.size());
}

inline double sample_variance(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double m = sample_mean(x);
  double s = 0;
  for (double v : x) s += (v - m) * (v - m);
  return s / double(x.size() - 1);
}

// Full round-trip decimal formatting for doubles (17 significant digits).
std::string format_double(double v);

}  // namespace rvol
