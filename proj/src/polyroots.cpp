#include "cutoff_lab/polyroots.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace cutoff_lab {

void RecurrenceSpec::validate() const {
  if (p <= 0) throw ValidationError("order p must be positive");
  if (static_cast<int>(phi.size()) != p)
    throw ValidationError("length(phi) must equal p");
  if (static_cast<int>(init.size()) != p)
    throw ValidationError("length(init) must equal p");
  if (phi.back() == 0.0) throw ValidationError("phi_p must be nonzero");
  if (!(eps > 0.0)) throw ValidationError("eps must be positive");
  for (double c : phi)
    if (!std::isfinite(c)) throw ValidationError("phi must be finite");
  for (double x : init)
    if (!std::isfinite(x)) throw ValidationError("init must be finite");
}

int RootDecomposition::total_multiplicity() const {
  int s = 0;
  for (const auto& g : groups) s += g.multiplicity;
  return s;
}

double RootDecomposition::max_modulus() const {
  double m = 0.0;
  for (const auto& g : groups) m = std::max(m, std::abs(g.root));
  return m;
}

PolyCoeffs characteristic_polynomial(const RecurrenceSpec& spec) {
  spec.validate();
  PolyCoeffs poly;
  poly.coeffs.resize(spec.p + 1);
  poly.coeffs[0] = 1.0;
  for (int i = 0; i < spec.p; ++i) poly.coeffs[i + 1] = -spec.phi[i];
  return poly;
}

Complex poly_eval(const PolyCoeffs& poly, Complex z) {
  Complex v = 0.0;
  for (double c : poly.coeffs) v = v * z + c;
  return v;
}

Complex poly_eval_derivative(const PolyCoeffs& poly, Complex z) {
  const int n = poly.degree();
  Complex v = 0.0;
  for (int i = 0; i < n; ++i) v = v * z + poly.coeffs[i] * double(n - i);
  return v;
}

namespace {

std::vector<Complex> companion_eigenvalues(const PolyCoeffs& poly) {
  const int n = poly.degree();
  if (n == 1) return {Complex(-poly.coeffs[1], 0.0)};
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) C(0, i) = -poly.coeffs[i + 1];
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(C, /*computeEigenvectors=*/false);
  std::vector<Complex> roots(n);
  for (int i = 0; i < n; ++i) roots[i] = es.eigenvalues()[i];
  return roots;
}

Complex polish(const PolyCoeffs& poly, Complex z, double residual_tol,
               int max_iters) {
  Complex best = z;
  double best_res = std::abs(poly_eval(poly, z));
  for (int it = 0; it < max_iters && best_res > residual_tol; ++it) {
    Complex f = poly_eval(poly, z);
    Complex df = poly_eval_derivative(poly, z);
    if (df == Complex(0.0)) break;
    z -= f / df;
    double res = std::abs(poly_eval(poly, z));
    if (res < best_res) {
      best_res = res;
      best = z;
    }
  }
  return best;
}

PolyCoeffs differentiate(const PolyCoeffs& poly, int times) {
  PolyCoeffs d = poly;
  for (int k = 0; k < times; ++k) {
    const int n = d.degree();
    std::vector<double> next(n);
    for (int i = 0; i < n; ++i) next[i] = d.coeffs[i] * double(n - i);
    d.coeffs = std::move(next);
  }
  return d;
}

}  // namespace

RootDecomposition find_roots(const PolyCoeffs& poly,
                             const RootFinderOptions& opts) {
  const int n = poly.degree();
  if (n < 1 || poly.coeffs.empty() || poly.coeffs[0] != 1.0)
    throw ValidationError("polynomial must be monic with degree >= 1");
  if (poly.coeffs.back() == 0.0)
    throw ValidationError("constant term must be nonzero");

  double max_coeff = 0.0;
  for (double c : poly.coeffs) max_coeff = std::max(max_coeff, std::abs(c));
  const double residual_tol = opts.residual_tol_scale * (1.0 + max_coeff);

  std::vector<Complex> roots = companion_eigenvalues(poly);
  for (auto& z : roots) z = polish(poly, z, residual_tol, opts.max_newton_iters);

  // Snap near-real roots onto the axis.
  for (auto& z : roots) {
    if (std::abs(z.imag()) < opts.realness_tol_scale * (1.0 + std::abs(z.real())))
      z = Complex(z.real(), 0.0);
  }

  // Greedy clustering into multiplicity groups; group root = cluster mean.
  std::vector<bool> used(roots.size(), false);
  std::vector<RootGroup> groups;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    Complex sum = roots[i];
    int count = 1;
    used[i] = true;
    const double tol =
        opts.cluster_tol_scale * std::max(1.0, std::abs(roots[i]));
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(roots[j] - roots[i]) < tol) {
        sum += roots[j];
        ++count;
        used[j] = true;
      }
    }
    Complex mean = sum / double(count);
    if (std::abs(mean.imag()) <
        opts.realness_tol_scale * (1.0 + std::abs(mean.real())))
      mean = Complex(mean.real(), 0.0);
    groups.push_back({mean, count});
  }

  // A multiplicity-m cluster sits at a simple root of the (m-1)-th
  // derivative; Newton there recovers the precision the eigensolver loses
  // on multiple roots.
  for (auto& g : groups) {
    if (g.multiplicity < 2) continue;
    PolyCoeffs der = differentiate(poly, g.multiplicity - 1);
    double dmax = 0.0;
    for (double c : der.coeffs) dmax = std::max(dmax, std::abs(c));
    Complex z = polish(der, g.root, opts.residual_tol_scale * (1.0 + dmax),
                       opts.max_newton_iters);
    if (std::abs(z.imag()) <
        opts.realness_tol_scale * (1.0 + std::abs(z.real())))
      z = Complex(z.real(), 0.0);
    g.root = z;
  }

  // Symmetrize conjugate pairs exactly: pair each positive-imag group with its
  // nearest negative-imag partner and average.
  std::vector<bool> paired(groups.size(), false);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (paired[i] || groups[i].root.imag() <= 0.0) continue;
    std::size_t best = groups.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < groups.size(); ++j) {
      if (paired[j] || j == i || groups[j].root.imag() >= 0.0) continue;
      double dist = std::abs(std::conj(groups[j].root) - groups[i].root);
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    if (best == groups.size() ||
        groups[best].multiplicity != groups[i].multiplicity)
      throw NonConvergence("unpaired complex root group");
    Complex avg = 0.5 * (groups[i].root + std::conj(groups[best].root));
    groups[i].root = avg;
    groups[best].root = std::conj(avg);
    paired[i] = paired[best] = true;
  }

  for (const auto& g : groups) {
    if (std::abs(poly_eval(poly, g.root)) > residual_tol)
      throw NonConvergence("root residual above tolerance");
  }

  std::sort(groups.begin(), groups.end(), [](const RootGroup& a,
                                             const RootGroup& b) {
    double ma = std::abs(a.root), mb = std::abs(b.root);
    if (ma != mb) return ma > mb;
    return std::arg(a.root) < std::arg(b.root);
  });

  RootDecomposition dec;
  dec.groups = std::move(groups);
  return dec;
}

StabilityReport check_stability(const RootDecomposition& roots) {
  StabilityReport rep;
  rep.kappa = roots.max_modulus();
  rep.margin = 1.0 - rep.kappa;
  rep.stable = rep.kappa < 1.0;
  return rep;
}

}  // namespace cutoff_lab
