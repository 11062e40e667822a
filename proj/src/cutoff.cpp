#include "cutoff_lab/cutoff.hpp"

#include <cmath>

#include "cutoff_lab/gaussian_tv.hpp"
#include "cutoff_lab/recurrence.hpp"

namespace cutoff_lab {

double cutoff_time(double r, int l, double eps) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("r must be in (0,1)");
  if (l < 1) throw DomainError("l must be >= 1");
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  if (eps >= r)
    throw DomainError("eps must be below r so the inner logarithm is defined");
  const double log_inv_r = std::log(1.0 / r);
  const double t1 = std::log(1.0 / eps) / log_inv_r;
  return t1 + double(l - 1) * std::log(t1) / log_inv_r;
}

double CutoffSchedule::t_of_eps(double eps) const {
  return cutoff_time(r, l, eps);
}

double c3_ratio(double alpha, double r, double eps) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("r must be in (0,1)");
  if (!(eps > 0.0) || eps >= r)
    throw DomainError("eps must be in (0, r)");
  if (alpha == 0.0) return 1.0;
  const double log_inv_r = std::log(1.0 / r);
  const double t1 = std::log(1.0 / eps) / log_inv_r;
  const double t_eps = t1 + alpha * std::log(t1) / log_inv_r;
  // exp(alpha ln t + t ln r - ln eps), assembled in log-space.
  return std::exp(alpha * std::log(t_eps) + t_eps * std::log(r) -
                  std::log(eps));
}

TVCurvePoint distance_point(const RecurrenceSpec& spec, double sigma_inf_sq_val,
                            const std::vector<double>& traj, double eps,
                            int t) {
  if (t < spec.p) throw DomainError("curve points require t >= p");
  const double st_sq = sigma_t_sq(spec, t);
  const double sigma_inf = std::sqrt(sigma_inf_sq_val);
  // Scale reduction by 1/(eps sigma_inf) keeps everything well inside the
  // representable range for tiny eps.
  const double mean_ratio = traj[t] / (eps * sigma_inf);
  const double var_ratio = st_sq / sigma_inf_sq_val;

  TVCurvePoint pt;
  pt.t = t;
  pt.abscissa = double(t);
  pt.d = tv_general({mean_ratio, var_ratio}, {0.0, 1.0});
  pt.D = tv_mean_shift(mean_ratio, 1.0);
  pt.R = tv_variance_only(var_ratio);
  return pt;
}

TVCurve distance_curve(const RecurrenceSpec& spec,
                       const RootDecomposition& roots, double eps, int t_min,
                       int t_max) {
  spec.validate();
  if (!check_stability(roots).stable) throw Unstable("spec is not stable");
  if (t_min < spec.p) throw DomainError("t_min must be >= p");
  if (t_max < t_min) throw DomainError("t_max must be >= t_min");

  const double sig_inf = sigma_inf_sq(spec).value;
  const std::vector<double> traj = iterate_deterministic(spec, t_max);

  TVCurve curve;
  curve.kind = CurveKind::time_grid;
  curve.eps = eps;
  for (int t = t_min; t <= t_max; ++t)
    curve.points.push_back(distance_point(spec, sig_inf, traj, eps, t));
  return curve;
}

TVCurve centered_curve(const RecurrenceSpec& spec,
                       const RootDecomposition& roots,
                       const CutoffSchedule& sched, double eps,
                       const std::vector<double>& b_grid) {
  spec.validate();
  if (!check_stability(roots).stable) throw Unstable("spec is not stable");

  const double t_eps = sched.t_of_eps(eps);
  int t_max = spec.p;
  std::vector<int> times(b_grid.size());
  for (std::size_t i = 0; i < b_grid.size(); ++i) {
    int t = static_cast<int>(std::floor(t_eps + b_grid[i] * sched.C));
    if (t < spec.p)
      throw DomainError("evaluation point floor(t(eps)+bC) falls below p");
    times[i] = t;
    t_max = std::max(t_max, t);
  }

  const double sig_inf = sigma_inf_sq(spec).value;
  const std::vector<double> traj = iterate_deterministic(spec, t_max);

  TVCurve curve;
  curve.kind = CurveKind::b_grid;
  curve.eps = eps;
  for (std::size_t i = 0; i < b_grid.size(); ++i) {
    TVCurvePoint pt = distance_point(spec, sig_inf, traj, eps, times[i]);
    pt.abscissa = b_grid[i];
    curve.points.push_back(pt);
  }
  return curve;
}

WindowReport window_cutoff_check(const RecurrenceSpec& spec,
                                 const RootDecomposition& roots,
                                 const CutoffSchedule& sched,
                                 const std::vector<double>& eps_grid,
                                 double b_neg, double b_pos, double tol) {
  spec.validate();
  if (!check_stability(roots).stable) throw Unstable("spec is not stable");
  if (!(b_neg < 0.0 && b_pos > 0.0))
    throw DomainError("need b_neg < 0 < b_pos");
  if (eps_grid.empty()) throw DomainError("eps grid must be nonempty");
  for (std::size_t i = 1; i < eps_grid.size(); ++i)
    if (!(eps_grid[i] < eps_grid[i - 1]))
      throw DomainError("eps grid must be strictly decreasing");

  const double sig_inf = sigma_inf_sq(spec).value;

  WindowReport report;
  report.tol = tol;
  report.b_neg = b_neg;
  report.b_pos = b_pos;
  report.C = sched.C;

  for (double eps : eps_grid) {
    WindowPoint wp;
    wp.eps = eps;
    wp.t_eps = sched.t_of_eps(eps);
    const int candidates[4] = {
        static_cast<int>(std::floor(wp.t_eps + b_neg * sched.C)),
        static_cast<int>(std::floor(wp.t_eps + b_pos * sched.C)),
        static_cast<int>(std::floor(0.5 * wp.t_eps)),
        static_cast<int>(std::floor(1.5 * wp.t_eps))};
    int t_max = spec.p;
    for (int t : candidates) t_max = std::max(t_max, t);
    const std::vector<double> traj = iterate_deterministic(spec, t_max);

    auto eval = [&](int t) -> std::optional<double> {
      if (t < spec.p) return std::nullopt;  // pre-history: skip, do not extrapolate
      return distance_point(spec, sig_inf, traj, eps, t).d;
    };
    wp.d_neg = eval(candidates[0]);
    wp.d_pos = eval(candidates[1]);
    wp.d_half = eval(candidates[2]);
    wp.d_threehalf = eval(candidates[3]);
    report.points.push_back(wp);
  }

  const WindowPoint& last = report.points.back();
  report.pass = last.d_neg && last.d_pos && *last.d_neg >= 1.0 - tol &&
                *last.d_pos <= tol;
  return report;
}

}  // namespace cutoff_lab
