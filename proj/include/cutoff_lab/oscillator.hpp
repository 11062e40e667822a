#pragma once

#include <optional>
#include <string>

#include "cutoff_lab/recurrence.hpp"
#include "cutoff_lab/types.hpp"

namespace cutoff_lab {

// Damped oscillator x'' + gamma x' + kappa x = eps * (white noise), unit mass,
// discretized by forward differences with step h.

enum class OscillatorCase { RealDistinct, RealRepeated, ComplexConjugate };

struct StabilityRange {
  OscillatorCase discriminant_case;
  double h_max = 0.0;    // (0, h_max): sufficient for case i, sharp otherwise
  bool sharp = false;
  double h_star = 0.0;   // min(1, h_max)
};

struct RootClassification {
  std::string subcase;   // "i", "ii.1", "ii.2", "iii.1", "iii.2"
  double r = 0.0;        // dominant modulus
  double theta = 0.0;    // rotation number, complex case only
  std::optional<std::pair<std::int64_t, std::int64_t>> theta_rational;
  double lambda1 = 0.0;  // real roots, when applicable
  double lambda2 = 0.0;
};

// p=2 recurrence with phi_1 = 2 - gamma h, phi_2 = -(1 - gamma h + kappa h^2),
// noise amplitude eps h^{3/2}, init (u, u + v h).
RecurrenceSpec discretize(double gamma, double kappa, double h, double eps,
                          double u = 1.0, double v = 0.0);

StabilityRange stability_range(double gamma, double kappa);

RootClassification classify_roots(double gamma, double kappa, double h);

}  // namespace cutoff_lab
