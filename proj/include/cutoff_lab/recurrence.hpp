#pragma once

#include <cstdint>
#include <optional>

#include "cutoff_lab/types.hpp"

namespace cutoff_lab {

// One root group of the closed form x_t = sum_j sum_k c_{j,k} t^{k-1} lambda_j^t.
struct RepresentationTerm {
  Complex root;
  int multiplicity = 1;
  std::vector<Complex> coeffs;  // c_{j,1}..c_{j,m_j}
};

struct SolutionRepresentation {
  std::vector<RepresentationTerm> terms;

  // Evaluates the closed form at integer t (real part; imaginary part is a
  // rounding residue checked by the invariants).
  double evaluate(std::int64_t t) const;
  Complex evaluate_complex(std::int64_t t) const;
};

// One oscillatory component of v_t = sum_j alpha_j cos(2 pi theta_j t)
//                                       + beta_j sin(2 pi theta_j t).
struct ProfileTerm {
  double alpha = 0.0;
  double beta = 0.0;
  double theta = 0.0;  // rotation number in [0, 1/2]
  // Certified rational value theta = num/den when the continued-fraction
  // expansion finds a matching convergent, else nullopt.
  std::optional<std::pair<std::int64_t, std::int64_t>> rational;
};

enum class Membership { Yes, No, Unknown };

struct AsymptoticProfile {
  double r = 0.0;  // dominant modulus among surviving terms
  int l = 1;       // dominant polynomial degree + 1
  std::vector<ProfileTerm> terms;
  double sup_bound = 0.0;      // M: triangle-inequality bound on |v_t|
  double m_liminf = 0.0;       // exact where computable, else scanned estimate
  bool liminf_exact = false;
  Membership in_maximal_set = Membership::Unknown;
  std::optional<std::int64_t> zero_witness;  // t with v_t = 0, when verdict is No

  double v(std::int64_t t) const;
};

struct MembershipResult {
  Membership verdict = Membership::Unknown;
  double m_liminf = 0.0;
  bool liminf_exact = false;
  std::optional<std::int64_t> witness;  // t with |v_t| < 1e-12 when No
};

// Direct iteration of the deterministic recurrence; returns x_0..x_T.
std::vector<double> iterate_deterministic(const RecurrenceSpec& spec, int T);

// Solve the p x p confluent Vandermonde system for the closed-form
// coefficients from the initial data.
SolutionRepresentation solve_representation(const RecurrenceSpec& spec,
                                            const RootDecomposition& roots);

// Extract (r, l, v_t) from the representation: surviving groups of maximal
// modulus and maximal polynomial degree, in real trigonometric form.
AsymptoticProfile asymptotic_profile(const SolutionRepresentation& rep,
                                     double init_norm);

// Decide whether the initial data lies in the maximal set (liminf |v_t| > 0).
MembershipResult maximal_set_membership(const RecurrenceSpec& spec,
                                        const AsymptoticProfile& profile);

// min |v_t| over the tail window horizon/2 <= t <= horizon.
double scan_liminf(const AsymptoticProfile& profile, std::int64_t horizon);

// Continued-fraction rationality detection: the convergent num/den with
// den <= max_den matching x within tol, if any.
std::optional<std::pair<std::int64_t, std::int64_t>> certify_rational(
    double x, std::int64_t max_den = 10000, double tol = 1e-12);

}  // namespace cutoff_lab
