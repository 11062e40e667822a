#pragma once

#include <cstdint>
#include <optional>

#include "cutoff_lab/moments.hpp"
#include "cutoff_lab/types.hpp"

namespace cutoff_lab {

// Evaluation rule for the cut-off time
//   t(eps) = ln(1/eps)/ln(1/r) + (l-1) ln(ln(1/eps)/ln(1/r)) / ln(1/r)
// with a constant window w(eps) = C.
struct CutoffSchedule {
  double r = 0.5;
  int l = 1;
  double C = 1.0;

  double t_of_eps(double eps) const;
  double w_of_eps(double /*eps*/) const { return C; }
};

enum class CurveKind { time_grid, b_grid, delta_grid };

struct TVCurvePoint {
  double abscissa = 0.0;  // t, b or delta depending on kind
  int t = 0;              // integer evaluation time
  double d = 0.0;         // d^(eps)(t)
  double D = 0.0;         // mean-shift surrogate distance
  double R = 0.0;         // variance-mismatch remainder
};

struct TVCurve {
  CurveKind kind = CurveKind::time_grid;
  double eps = 0.0;
  std::vector<TVCurvePoint> points;
};

struct WindowPoint {
  double eps = 0.0;
  double t_eps = 0.0;              // cut-off time
  std::optional<double> d_neg;     // d at floor(t_eps + b_neg C), when >= p
  std::optional<double> d_pos;     // d at floor(t_eps + b_pos C)
  std::optional<double> d_half;    // d at floor(0.5 t_eps)
  std::optional<double> d_threehalf;  // d at floor(1.5 t_eps)
};

struct WindowReport {
  std::vector<WindowPoint> points;  // eps decreasing
  bool pass = false;                // verdict at the smallest eps
  double tol = 0.01;
  double b_neg = 0.0;
  double b_pos = 0.0;
  double C = 1.0;
};

double cutoff_time(double r, int l, double eps);

// d, D, R at a single integer time t >= p (shared workhorse for all curves).
TVCurvePoint distance_point(const RecurrenceSpec& spec, double sigma_inf_sq_val,
                            const std::vector<double>& traj, double eps, int t);

// d/D/R sampled over an integer time grid t_min..t_max.
TVCurve distance_curve(const RecurrenceSpec& spec, const RootDecomposition& roots,
                       double eps, int t_min, int t_max);

// d/D/R at t = floor(t(eps) + b C) over a grid of window offsets b.
TVCurve centered_curve(const RecurrenceSpec& spec, const RootDecomposition& roots,
                       const CutoffSchedule& sched, double eps,
                       const std::vector<double>& b_grid);

// Window diagnostic across an eps grid: values at b_neg/b_pos offsets plus the
// delta in {0.5, 1.5} form of the plain cut-off definition. Grid points whose
// evaluation time falls below p are reported as absent rather than raising.
WindowReport window_cutoff_check(const RecurrenceSpec& spec,
                                 const RootDecomposition& roots,
                                 const CutoffSchedule& sched,
                                 const std::vector<double>& eps_grid,
                                 double b_neg, double b_pos, double tol);

// (t(eps))^alpha r^(t(eps)) / eps, evaluated in log-space.
double c3_ratio(double alpha, double r, double eps);

}  // namespace cutoff_lab
