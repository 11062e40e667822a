// Independent test oracles: adaptive quadrature for the TV integral,
// composition enumeration for the noise weights, and a generator of random
// stable recurrence specs built from prescribed root sets. None of these share
// code with the implementation paths they check.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "cutoff_lab/types.hpp"

namespace oracles {

using cutoff_lab::Complex;
using cutoff_lab::RecurrenceSpec;

inline double gauss_pdf(double x, double m, double var) {
  return std::exp(-0.5 * (x - m) * (x - m) / var) /
         std::sqrt(2.0 * 3.14159265358979323846 * var);
}

namespace detail {

struct TVIntegrand {
  double m1, v1, m2, v2;
  double operator()(double x) const {
    return 0.5 * std::abs(gauss_pdf(x, m1, v1) - gauss_pdf(x, m2, v2));
  }
};

inline double adapt(const TVIntegrand& f, double a, double b, double fa,
                    double fm, double fb, double whole, double tol,
                    int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adapt(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}

}  // namespace detail

// TV between N(m1, v1) and N(m2, v2) as half the L1 distance of the densities,
// by adaptive Simpson quadrature.
inline double tv_quadrature(double m1, double v1, double m2, double v2,
                            double tol = 1e-12) {
  detail::TVIntegrand f{m1, v1, m2, v2};
  const double s = std::max(std::sqrt(v1), std::sqrt(v2));
  const double a = std::min(m1, m2) - 12.0 * s;
  const double b = std::max(m1, m2) + 12.0 * s;
  // Split at the means so the kinks sit near subdivision points.
  std::vector<double> knots = {a, std::min(m1, m2), 0.5 * (m1 + m2),
                               std::max(m1, m2), b};
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    double lo = knots[i], hi = knots[i + 1];
    if (!(hi > lo)) continue;
    const double mid = 0.5 * (lo + hi);
    const double flo = f(lo), fmid = f(mid), fhi = f(hi);
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    total += detail::adapt(f, lo, hi, flo, fmid, fhi, whole, tol / 4.0, 48);
  }
  return total;
}

// psi_s as the explicit sum over all compositions (k_1,...,k_p) with
// sum k_j = s of prod lambda_i^{k_i}, in complex arithmetic.
inline Complex psi_enumeration(const std::vector<Complex>& lambdas, int s) {
  const int p = static_cast<int>(lambdas.size());
  Complex total = 0.0;
  std::vector<int> k(p, 0);
  // Iterate compositions of s into p parts.
  std::function<void(int, int, Complex)> rec = [&](int idx, int remaining,
                                                   Complex prod) {
    if (idx == p - 1) {
      total += prod * std::pow(lambdas[idx], double(remaining));
      return;
    }
    Complex pw = 1.0;
    for (int ki = 0; ki <= remaining; ++ki) {
      rec(idx + 1, remaining - ki, prod * pw);
      pw *= lambdas[idx];
    }
  };
  rec(0, s, Complex(1.0));
  return total;
}

// Expand prod (lambda - root_j) into monic real coefficients.
inline std::vector<double> expand_poly(const std::vector<Complex>& roots) {
  std::vector<Complex> c = {Complex(1.0)};
  for (const auto& r : roots) {
    std::vector<Complex> next(c.size() + 1, Complex(0.0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] += c[i];
      next[i + 1] -= c[i] * r;
    }
    c = std::move(next);
  }
  std::vector<double> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].real();
  return out;
}

// Random stable root multiset (real roots and conjugate pairs, occasional
// repeats) with max modulus <= max_mod, plus the matching RecurrenceSpec.
struct RandomStableSpec {
  RecurrenceSpec spec;
  std::vector<Complex> roots;  // with repetition, length p
};

inline RandomStableSpec random_stable_spec(std::mt19937_64& rng, int max_p,
                                           double max_mod = 0.95) {
  std::uniform_int_distribution<int> pd(1, max_p);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  const int p = pd(rng);
  std::vector<Complex> roots;
  while (static_cast<int>(roots.size()) < p) {
    const int remaining = p - static_cast<int>(roots.size());
    const double mod = 0.05 + (max_mod - 0.05) * ud(rng);
    if (remaining >= 2 && ud(rng) < 0.4) {
      const double theta = 2.0 * 3.14159265358979323846 * ud(rng);
      Complex z = std::polar(mod, theta);
      if (std::abs(z.imag()) < 1e-3) z = Complex(z.real(), 0.0);
      if (z.imag() == 0.0) {
        roots.push_back(z);
      } else {
        roots.push_back(z);
        roots.push_back(std::conj(z));
      }
    } else if (remaining >= 2 && ud(rng) < 0.15) {
      const double sgn = ud(rng) < 0.5 ? 1.0 : -1.0;
      roots.push_back(Complex(sgn * mod, 0.0));  // repeated real root
      roots.push_back(Complex(sgn * mod, 0.0));
    } else {
      const double sgn = ud(rng) < 0.5 ? 1.0 : -1.0;
      roots.push_back(Complex(sgn * mod, 0.0));
    }
  }
  std::vector<double> coeffs = expand_poly(roots);

  RandomStableSpec out;
  out.roots = roots;
  out.spec.p = p;
  out.spec.phi.resize(p);
  for (int i = 0; i < p; ++i) out.spec.phi[i] = -coeffs[i + 1];
  if (out.spec.phi.back() == 0.0) out.spec.phi.back() = 1e-8;
  out.spec.init.resize(p);
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int i = 0; i < p; ++i) out.spec.init[i] = nd(rng);
  out.spec.eps = 0.001;
  return out;
}

}  // namespace oracles
