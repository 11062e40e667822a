#pragma once

#include "cutoff_lab/polyroots.hpp"
#include "cutoff_lab/types.hpp"

namespace cutoff_lab {

struct SigmaInfResult {
  double value = 0.0;
  int truncation_index = 0;  // J: weights psi_0..psi_J were summed
  double tail_bound = 0.0;   // certified bound on the omitted tail
};

// psi_0..psi_n via the linear recurrence
//   psi_0 = 1, psi_s = phi_1 psi_{s-1} + ... + phi_p psi_{s-p}.
// psi_s is the complete homogeneous symmetric polynomial h_s of the roots.
std::vector<double> psi_weights(const RecurrenceSpec& spec, int n);

// sigma_t^2 = sum_{s=0}^{t-p} psi_s^2 for t >= p.
double sigma_t_sq(const RecurrenceSpec& spec, int t);

// Limit variance with a certified truncation: the tail of sum psi_s^2 is
// dominated by sum_{j>J} (j+1)^{2p} kappa^{2j}.
SigmaInfResult sigma_inf_sq(const RecurrenceSpec& spec, double tol = 1e-12);

// Law of X_t: N(x_t, eps^2 sigma_t^2) for t >= p.
GaussianLaw law_at(const RecurrenceSpec& spec, int t,
                   const RootDecomposition& roots);

// Limit law N(0, eps^2 sigma_inf^2).
GaussianLaw limit_law(const RecurrenceSpec& spec, double tol = 1e-12);

}  // namespace cutoff_lab
