#pragma once

#include "cutoff_lab/types.hpp"

namespace cutoff_lab {

// Standard normal CDF, exactly symmetric: Phi(-x) == 1 - Phi(x).
double std_normal_cdf(double x);

// TV between N(m, sigma^2) and N(0, sigma^2): 2 Phi(|m| / (2 sigma)) - 1.
double tv_mean_shift(double m, double sigma_sq);

// TV between N(0, sigma^2) and N(0, 1) via the crossing point
// x(sigma) = sigma sqrt(ln(sigma^2) / (sigma^2 - 1)); continuous at sigma^2 = 1.
double tv_variance_only(double sigma_sq);

// Exact TV between arbitrary one-dimensional Gaussians by density crossings.
double tv_general(const GaussianLaw& a, const GaussianLaw& b);

}  // namespace cutoff_lab
