#include "cutoff_lab/recurrence.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace cutoff_lab {

namespace {

constexpr double kZeroValueTol = 1e-12;       // attained |v_t| counted as zero
constexpr std::int64_t kPeriodCap = 100000000; // exact-period evaluation bound
constexpr std::int64_t kScanHorizon = 10000;   // fallback liminf scan

double term_value(const ProfileTerm& term, std::int64_t t) {
  double phase;
  if (term.rational) {
    // Reduced phase keeps long rational rotations drift-free.
    auto [num, den] = *term.rational;
    std::int64_t k = (num * (t % den)) % den;
    phase = 2.0 * std::numbers::pi * double(k) / double(den);
  } else {
    phase = 2.0 * std::numbers::pi * term.theta * double(t);
  }
  return term.alpha * std::cos(phase) + term.beta * std::sin(phase);
}

}  // namespace

std::vector<double> iterate_deterministic(const RecurrenceSpec& spec, int T) {
  spec.validate();
  if (T < spec.p - 1) throw DomainError("horizon T must be at least p-1");
  std::vector<double> x(T + 1);
  for (int t = 0; t < spec.p; ++t) x[t] = spec.init[t];
  for (int t = spec.p; t <= T; ++t) {
    double v = 0.0;
    for (int i = 0; i < spec.p; ++i) v += spec.phi[i] * x[t - 1 - i];
    x[t] = v;
  }
  return x;
}

Complex SolutionRepresentation::evaluate_complex(std::int64_t t) const {
  Complex sum = 0.0;
  const double td = double(t);
  for (const auto& term : terms) {
    Complex lam_t = (t == 0) ? Complex(1.0) : std::pow(term.root, td);
    double tk = 1.0;  // t^{k-1}, with 0^0 = 1
    Complex inner = 0.0;
    for (int k = 0; k < term.multiplicity; ++k) {
      inner += term.coeffs[k] * tk;
      tk *= td;
    }
    sum += inner * lam_t;
  }
  return sum;
}

double SolutionRepresentation::evaluate(std::int64_t t) const {
  return evaluate_complex(t).real();
}

SolutionRepresentation solve_representation(const RecurrenceSpec& spec,
                                            const RootDecomposition& roots) {
  spec.validate();
  const int p = spec.p;
  if (roots.total_multiplicity() != p)
    throw ValidationError("root multiplicities must sum to p");

  // Basis functions t^{k-1} lambda_j^t at t = 0..p-1 (confluent Vandermonde).
  Eigen::MatrixXcd A(p, p);
  for (int t = 0; t < p; ++t) {
    int col = 0;
    for (const auto& g : roots.groups) {
      Complex lam_t = (t == 0) ? Complex(1.0) : std::pow(g.root, double(t));
      double tk = 1.0;
      for (int k = 0; k < g.multiplicity; ++k) {
        A(t, col++) = tk * lam_t;
        tk *= double(t);
      }
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU |
                                                Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) == 0.0 || sv(0) / sv(sv.size() - 1) > 1e12)
    throw IllConditioned("confluent Vandermonde system condition above 1e12");

  Eigen::VectorXcd rhs(p);
  for (int t = 0; t < p; ++t) rhs(t) = Complex(spec.init[t], 0.0);
  Eigen::VectorXcd c = svd.solve(rhs);

  SolutionRepresentation rep;
  int col = 0;
  for (const auto& g : roots.groups) {
    RepresentationTerm term;
    term.root = g.root;
    term.multiplicity = g.multiplicity;
    term.coeffs.resize(g.multiplicity);
    for (int k = 0; k < g.multiplicity; ++k) term.coeffs[k] = c(col++);
    rep.terms.push_back(std::move(term));
  }

  // Enforce exact conjugate structure: real roots get real coefficients,
  // conjugate root pairs get conjugate coefficients.
  for (std::size_t i = 0; i < rep.terms.size(); ++i) {
    auto& ti = rep.terms[i];
    if (ti.root.imag() == 0.0) {
      for (auto& cc : ti.coeffs) cc = Complex(cc.real(), 0.0);
      continue;
    }
    if (ti.root.imag() < 0.0) continue;  // handled via its partner
    for (std::size_t j = 0; j < rep.terms.size(); ++j) {
      auto& tj = rep.terms[j];
      if (j == i || tj.root != std::conj(ti.root)) continue;
      for (int k = 0; k < ti.multiplicity; ++k) {
        Complex avg = 0.5 * (ti.coeffs[k] + std::conj(tj.coeffs[k]));
        ti.coeffs[k] = avg;
        tj.coeffs[k] = std::conj(avg);
      }
    }
  }
  return rep;
}

std::optional<std::pair<std::int64_t, std::int64_t>> certify_rational(
    double x, std::int64_t max_den, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  // Continued-fraction convergents h_k / k_k of x.
  double frac = x;
  std::int64_t h_prev = 1, h = static_cast<std::int64_t>(std::floor(x));
  std::int64_t k_prev = 0, k = 1;
  frac -= std::floor(x);
  if (std::abs(x - double(h)) <= tol) return std::make_pair(h, std::int64_t(1));
  for (int iter = 0; iter < 64; ++iter) {
    if (frac == 0.0) break;
    double inv = 1.0 / frac;
    std::int64_t a = static_cast<std::int64_t>(std::floor(inv));
    frac = inv - std::floor(inv);
    std::int64_t h_next = a * h + h_prev;
    std::int64_t k_next = a * k + k_prev;
    if (k_next > max_den || k_next <= 0) break;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
    if (std::abs(x - double(h) / double(k)) <= tol)
      return std::make_pair(h, k);
  }
  return std::nullopt;
}

double AsymptoticProfile::v(std::int64_t t) const {
  double sum = 0.0;
  for (const auto& term : terms) sum += term_value(term, t);
  return sum;
}

namespace {

MembershipResult classify_membership(const AsymptoticProfile& profile) {
  MembershipResult res;
  std::int64_t period = 1;
  bool all_rational = true;
  for (const auto& term : profile.terms) {
    auto rat = term.rational ? term.rational : certify_rational(term.theta);
    if (!rat) {
      all_rational = false;
      break;
    }
    period = std::lcm(period, rat->second);
    if (period > kPeriodCap) {
      all_rational = false;
      break;
    }
  }
  if (!all_rational) {
    res.verdict = Membership::Unknown;
    res.m_liminf = scan_liminf(profile, kScanHorizon);
    res.liminf_exact = false;
    return res;
  }
  // Finite attained set: exact minimum over one common period.
  double min_abs = std::numeric_limits<double>::infinity();
  std::int64_t argmin = 0;
  for (std::int64_t t = 0; t < period; ++t) {
    double a = std::abs(profile.v(t));
    if (a < min_abs) {
      min_abs = a;
      argmin = t;
    }
  }
  res.m_liminf = min_abs;
  res.liminf_exact = true;
  if (min_abs < kZeroValueTol) {
    res.verdict = Membership::No;
    res.witness = argmin;
  } else {
    res.verdict = Membership::Yes;
  }
  return res;
}

}  // namespace

AsymptoticProfile asymptotic_profile(const SolutionRepresentation& rep,
                                     double init_norm) {
  const double zero_tol = 1e-9 * (1.0 + init_norm);

  // Surviving groups and their top nonzero coefficient index l_k.
  struct Surviving {
    const RepresentationTerm* term;
    int l_k;
    double modulus;
  };
  std::vector<Surviving> surviving;
  for (const auto& term : rep.terms) {
    int l_k = 0;
    for (int k = term.multiplicity; k >= 1; --k) {
      if (std::abs(term.coeffs[k - 1]) >= zero_tol) {
        l_k = k;
        break;
      }
    }
    if (l_k > 0) surviving.push_back({&term, l_k, std::abs(term.root)});
  }
  if (surviving.empty())
    throw ZeroSolution("all representation coefficients vanish");

  double r = 0.0;
  for (const auto& s : surviving) r = std::max(r, s.modulus);
  const double mod_tol = 1e-9 * std::max(1.0, r);

  int l = 0;
  for (const auto& s : surviving)
    if (std::abs(s.modulus - r) <= mod_tol) l = std::max(l, s.l_k);

  AsymptoticProfile profile;
  profile.r = r;
  profile.l = l;
  for (const auto& s : surviving) {
    if (std::abs(s.modulus - r) > mod_tol || s.l_k != l) continue;
    const Complex root = s.term->root;
    const Complex c = s.term->coeffs[l - 1];
    ProfileTerm term;
    if (root.imag() == 0.0) {
      term.theta = root.real() >= 0.0 ? 0.0 : 0.5;
      term.alpha = c.real();
      term.beta = 0.0;
    } else if (root.imag() > 0.0) {
      // c lam^t + conj(c) conj(lam)^t = 2 Re(c) cos - 2 Im(c) sin
      double theta = std::arg(root) / (2.0 * std::numbers::pi);
      if (theta < 0.0) theta += 1.0;
      term.theta = theta;
      term.alpha = 2.0 * c.real();
      term.beta = -2.0 * c.imag();
    } else {
      continue;  // conjugate partner already counted
    }
    term.rational = certify_rational(term.theta);
    profile.terms.push_back(term);
  }

  for (const auto& term : profile.terms)
    profile.sup_bound += std::hypot(term.alpha, term.beta);

  MembershipResult mem = classify_membership(profile);
  profile.m_liminf = mem.m_liminf;
  profile.liminf_exact = mem.liminf_exact;
  profile.in_maximal_set = mem.verdict;
  profile.zero_witness = mem.witness;
  return profile;
}

MembershipResult maximal_set_membership(const RecurrenceSpec& spec,
                                        const AsymptoticProfile& profile) {
  spec.validate();
  return classify_membership(profile);
}

double scan_liminf(const AsymptoticProfile& profile, std::int64_t horizon) {
  if (horizon < 1) throw DomainError("scan horizon must be >= 1");
  double min_abs = std::numeric_limits<double>::infinity();
  for (std::int64_t t = horizon / 2; t <= horizon; ++t)
    min_abs = std::min(min_abs, std::abs(profile.v(t)));
  return min_abs;
}

}  // namespace cutoff_lab
