#include "cutoff_lab/moments.hpp"

#include <cmath>

#include "cutoff_lab/recurrence.hpp"

namespace cutoff_lab {

std::vector<double> psi_weights(const RecurrenceSpec& spec, int n) {
  spec.validate();
  if (n < 0) throw DomainError("n must be >= 0");
  std::vector<double> psi(n + 1);
  psi[0] = 1.0;
  for (int s = 1; s <= n; ++s) {
    double v = 0.0;
    for (int i = 0; i < spec.p && i < s; ++i) v += spec.phi[i] * psi[s - 1 - i];
    psi[s] = v;
  }
  return psi;
}

double sigma_t_sq(const RecurrenceSpec& spec, int t) {
  spec.validate();
  if (t < spec.p)
    throw DomainError("sigma_t^2 is defined only for t >= p");
  std::vector<double> psi = psi_weights(spec, t - spec.p);
  double sum = 0.0;
  for (double w : psi) sum += w * w;
  return sum;
}

namespace {

// Certified bound on sum_{j>J} (j+1)^{2p} kappa^{2j}: once the term ratio
// rho = ((J+3)/(J+2))^{2p} kappa^2 is below one, the tail is geometric.
double crude_tail_bound(int J, int p, double kappa) {
  const double k2 = kappa * kappa;
  double rho = std::pow(double(J + 3) / double(J + 2), 2.0 * p) * k2;
  if (rho >= 1.0) return std::numeric_limits<double>::infinity();
  double first = std::exp(2.0 * p * std::log(double(J + 2)) +
                          2.0 * double(J + 1) * std::log(kappa));
  return first / (1.0 - rho);
}

}  // namespace

SigmaInfResult sigma_inf_sq(const RecurrenceSpec& spec, double tol) {
  spec.validate();
  if (!(tol > 0.0)) throw DomainError("tol must be positive");
  const PolyCoeffs poly = characteristic_polynomial(spec);
  const RootDecomposition roots = find_roots(poly);
  const StabilityReport stab = check_stability(roots);
  if (!stab.stable) throw Unstable("max root modulus >= 1");
  const double kappa = stab.kappa;
  const int p = spec.p;

  // psi recurrence with two stopping rules: the certified crude tail bound,
  // or 2p consecutive psi_s^2 below tol (1 - kappa^2) / 2, whichever is first.
  const double small_psi_sq = tol * (1.0 - kappa * kappa) / 2.0;
  std::vector<double> lag(p, 0.0);  // psi_{s-1}..psi_{s-p}
  double sum = 0.0;
  int consecutive_small = 0;
  int J = -1;
  const int hard_cap = 100000000;
  for (int s = 0; s <= hard_cap; ++s) {
    double psi;
    if (s == 0) {
      psi = 1.0;
    } else {
      psi = 0.0;
      for (int i = 0; i < p && i < s; ++i) psi += spec.phi[i] * lag[i];
    }
    sum += psi * psi;
    J = s;
    for (int i = p - 1; i > 0; --i) lag[i] = lag[i - 1];
    if (p > 0) lag[0] = psi;

    consecutive_small = (psi * psi < small_psi_sq) ? consecutive_small + 1 : 0;
    if (consecutive_small >= 2 * p) break;
    if (crude_tail_bound(s, p, kappa) < tol) break;
  }

  SigmaInfResult res;
  res.value = sum;
  res.truncation_index = J;
  res.tail_bound = crude_tail_bound(J, p, kappa);
  return res;
}

GaussianLaw law_at(const RecurrenceSpec& spec, int t,
                   const RootDecomposition& roots) {
  spec.validate();
  if (t < spec.p) throw DomainError("law defined only for t >= p");
  if (!check_stability(roots).stable)
    throw Unstable("max root modulus >= 1");
  std::vector<double> traj = iterate_deterministic(spec, t);
  return {traj[t], spec.eps * spec.eps * sigma_t_sq(spec, t)};
}

GaussianLaw limit_law(const RecurrenceSpec& spec, double tol) {
  SigmaInfResult inf = sigma_inf_sq(spec, tol);
  return {0.0, spec.eps * spec.eps * inf.value};
}

}  // namespace cutoff_lab
