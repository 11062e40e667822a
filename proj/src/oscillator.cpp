#include "cutoff_lab/oscillator.hpp"

#include <cmath>
#include <numbers>

namespace cutoff_lab {

RecurrenceSpec discretize(double gamma, double kappa, double h, double eps,
                          double u, double v) {
  if (!(gamma > 0.0) || !(kappa > 0.0) || !(h > 0.0) || !(eps > 0.0))
    throw ValidationError("gamma, kappa, h, eps must be positive");
  RecurrenceSpec spec;
  spec.p = 2;
  spec.phi = {2.0 - gamma * h, -(1.0 - gamma * h + kappa * h * h)};
  spec.init = {u, u + v * h};
  spec.eps = eps * std::pow(h, 1.5);
  return spec;
}

StabilityRange stability_range(double gamma, double kappa) {
  if (!(gamma > 0.0) || !(kappa > 0.0))
    throw ValidationError("gamma, kappa must be positive");
  StabilityRange range;
  const double disc = gamma * gamma - 4.0 * kappa;
  if (disc > 0.0) {
    range.discriminant_case = OscillatorCase::RealDistinct;
    range.h_max = 2.0 / gamma;  // sufficient only
    range.sharp = false;
  } else if (disc == 0.0) {
    range.discriminant_case = OscillatorCase::RealRepeated;
    range.h_max = gamma / kappa;
    range.sharp = true;
  } else {
    range.discriminant_case = OscillatorCase::ComplexConjugate;
    range.h_max = gamma / kappa;
    range.sharp = true;
  }
  range.h_star = std::min(1.0, range.h_max);
  return range;
}

RootClassification classify_roots(double gamma, double kappa, double h) {
  StabilityRange range = stability_range(gamma, kappa);
  if (!(h > 0.0) || h >= range.h_max)
    throw OutOfRange("step size h outside the stability range");
  // If the range is only sufficient, fall back to the actual root moduli.

  RootClassification cls;
  // lambda^2 + (gamma h - 2) lambda + (1 - gamma h + kappa h^2);
  // its discriminant is h^2 (gamma^2 - 4 kappa).
  const double disc = gamma * gamma - 4.0 * kappa;
  const double half_sum = (2.0 - gamma * h) / 2.0;
  if (disc > 0.0) {
    const double half_gap = h * std::sqrt(disc) / 2.0;
    cls.lambda1 = half_sum + half_gap;
    cls.lambda2 = half_sum - half_gap;
    if (std::max(std::abs(cls.lambda1), std::abs(cls.lambda2)) >= 1.0)
      throw OutOfRange("step size h outside the stability range");
    if (cls.lambda1 == -cls.lambda2) {
      cls.subcase = "ii.2";
      cls.r = std::abs(cls.lambda1);
    } else {
      cls.subcase = "i";
      cls.r = std::max(std::abs(cls.lambda1), std::abs(cls.lambda2));
    }
  } else if (disc == 0.0) {
    cls.subcase = "ii.1";
    cls.lambda1 = cls.lambda2 = half_sum;
    cls.r = std::abs(half_sum);
  } else {
    const double r_sq = 1.0 - gamma * h + kappa * h * h;
    cls.r = std::sqrt(r_sq);
    const double half_imag = h * std::sqrt(-disc) / 2.0;
    double theta =
        std::atan2(half_imag, half_sum) / (2.0 * std::numbers::pi);
    if (theta < 0.0) theta += 1.0;
    cls.theta = theta;
    cls.theta_rational = certify_rational(theta);
    cls.subcase = cls.theta_rational ? "iii.1" : "iii.2";
  }
  return cls;
}

}  // namespace cutoff_lab
