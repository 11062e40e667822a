#pragma once

#include "cutoff_lab/types.hpp"

namespace cutoff_lab {

// Monic characteristic polynomial lambda^p - phi_1 lambda^{p-1} - ... - phi_p.
PolyCoeffs characteristic_polynomial(const RecurrenceSpec& spec);

// Evaluate the polynomial and its derivative at z (Horner).
Complex poly_eval(const PolyCoeffs& poly, Complex z);
Complex poly_eval_derivative(const PolyCoeffs& poly, Complex z);

struct RootFinderOptions {
  // Residual tolerance scale: |f(root)| <= residual_tol_scale * (1 + max|coeff|).
  double residual_tol_scale = 1e-10;
  // Roots closer than cluster_tol_scale * max(1, |root|) share a group.
  double cluster_tol_scale = 1e-7;
  // |imag| below realness_tol_scale * (1 + |real|) snaps to the real axis.
  double realness_tol_scale = 1e-9;
  int max_newton_iters = 50;
};

// Companion-matrix eigenvalues polished by Newton steps, then clustered into
// multiplicity groups with exact conjugate symmetry.
RootDecomposition find_roots(const PolyCoeffs& poly,
                             const RootFinderOptions& opts = {});

// Hypothesis check: all root moduli strictly below one.
StabilityReport check_stability(const RootDecomposition& roots);

}  // namespace cutoff_lab
