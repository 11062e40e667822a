#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace cutoff_lab {

using Complex = std::complex<double>;

// Invalid input data (violated invariant of a domain type).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Iterative root refinement failed to meet the residual tolerance.
struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Linear system too ill-conditioned to trust (near-coincident distinct roots).
struct IllConditioned : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Quantity requested outside its domain of definition.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operation requires all characteristic roots inside the unit disc.
struct Unstable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All representation coefficients vanish (zero initial data).
struct ZeroSolution : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Step size outside the stability range of the discretized oscillator.
struct OutOfRange : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A noise-perturbed linear recurrence of order p:
//   X_{t+p} = phi_1 X_{t+p-1} + ... + phi_p X_t + eps * xi_{t+p}
// with given initial values x_0..x_{p-1} and standard normal innovations.
struct RecurrenceSpec {
  int p = 0;
  std::vector<double> phi;   // phi_1..phi_p, phi_p != 0
  std::vector<double> init;  // x_0..x_{p-1}
  double eps = 0.0;

  void validate() const;
};

// Monic coefficients of lambda^p - phi_1 lambda^{p-1} - ... - phi_p,
// highest degree first.
struct PolyCoeffs {
  std::vector<double> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

struct RootGroup {
  Complex root;
  int multiplicity = 1;
};

// Distinct roots with multiplicities, sorted by descending modulus, ties
// broken by ascending principal argument. Conjugate symmetry is exact.
struct RootDecomposition {
  std::vector<RootGroup> groups;

  int q() const { return static_cast<int>(groups.size()); }
  int total_multiplicity() const;
  double max_modulus() const;
};

struct StabilityReport {
  bool stable = false;
  double kappa = 0.0;   // max root modulus
  double margin = 0.0;  // 1 - kappa
};

struct GaussianLaw {
  double mean = 0.0;
  double variance = 1.0;
};

}  // namespace cutoff_lab
