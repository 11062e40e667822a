#include "cutoff_lab/gaussian_tv.hpp"

#include <algorithm>
#include <cmath>

namespace cutoff_lab {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// ln(sigma^2) / (sigma^2 - 1), stable through the removable singularity.
double log_ratio(double sigma_sq) {
  const double u = sigma_sq - 1.0;
  if (std::abs(u) < 1e-8) return 1.0 - 0.5 * u;
  return std::log1p(u) / u;
}

}  // namespace

double std_normal_cdf(double x) {
  // Both branches route through erfc of a nonnegative argument, so
  // Phi(-x) == 1 - Phi(x) holds bit-exactly.
  if (x < 0.0) return 0.5 * std::erfc(-x * kInvSqrt2);
  return 1.0 - 0.5 * std::erfc(x * kInvSqrt2);
}

double tv_mean_shift(double m, double sigma_sq) {
  if (!(sigma_sq > 0.0)) throw ValidationError("variance must be positive");
  const double z = std::abs(m) / (2.0 * std::sqrt(sigma_sq));
  return clamp01(2.0 * std_normal_cdf(z) - 1.0);
}

double tv_variance_only(double sigma_sq) {
  if (!(sigma_sq > 0.0)) throw ValidationError("variance must be positive");
  if (sigma_sq == 1.0) return 0.0;
  const double sigma = std::sqrt(sigma_sq);
  const double x_sigma = sigma * std::sqrt(log_ratio(sigma_sq));
  const double lo = std::min(x_sigma, x_sigma / sigma);
  const double hi = std::max(x_sigma, x_sigma / sigma);
  return clamp01(2.0 * (std_normal_cdf(hi) - std_normal_cdf(lo)));
}

double tv_general(const GaussianLaw& a, const GaussianLaw& b) {
  if (!(a.variance > 0.0) || !(b.variance > 0.0))
    throw ValidationError("variances must be positive");
  const double ratio = a.variance / b.variance;
  if (std::abs(ratio - 1.0) < 1e-12) {
    // Equal-variance branch: single density crossing at the means' midpoint.
    return tv_mean_shift(a.mean - b.mean, b.variance);
  }
  // Density log-equality quadratic A x^2 + B x + C = 0 has two real roots
  // when the variances differ.
  const double ia = 1.0 / a.variance;
  const double ib = 1.0 / b.variance;
  const double A = ib - ia;
  const double B = 2.0 * (a.mean * ia - b.mean * ib);
  const double C = b.mean * b.mean * ib - a.mean * a.mean * ia -
                   std::log(a.variance / b.variance);
  const double disc = B * B - 4.0 * A * C;
  const double sq = std::sqrt(std::max(disc, 0.0));
  // Stable quadratic roots.
  const double qq = -0.5 * (B + std::copysign(sq, B));
  double x1 = qq / A;
  double x2 = (qq != 0.0) ? C / qq : -B / A;
  if (x1 > x2) std::swap(x1, x2);

  const double sa = std::sqrt(a.variance);
  const double sb = std::sqrt(b.variance);
  const double Fa = std_normal_cdf((x2 - a.mean) / sa) -
                    std_normal_cdf((x1 - a.mean) / sa);
  const double Fb = std_normal_cdf((x2 - b.mean) / sb) -
                    std_normal_cdf((x1 - b.mean) / sb);
  return clamp01(std::abs(Fa - Fb));
}

}  // namespace cutoff_lab
