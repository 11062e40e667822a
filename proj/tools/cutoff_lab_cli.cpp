#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "cutoff_lab/cutoff.hpp"
#include "cutoff_lab/gaussian_tv.hpp"
#include "cutoff_lab/moments.hpp"
#include "cutoff_lab/montecarlo.hpp"
#include "cutoff_lab/oscillator.hpp"
#include "cutoff_lab/polyroots.hpp"
#include "cutoff_lab/recurrence.hpp"
#include "cutoff_lab/specfile.hpp"

using json = nlohmann::json;
using namespace cutoff_lab;

namespace {

std::vector<double> parse_eps_grid(const std::string& s) {
  // "1e-2:1e-8:7" -> 7 log-spaced values from 1e-2 down to 1e-8.
  double lo, hi;
  int n;
  if (std::sscanf(s.c_str(), "%lf:%lf:%d", &hi, &lo, &n) != 3 || n < 1)
    throw ValidationError("eps grid must be START:END:COUNT");
  std::vector<double> grid(n);
  if (n == 1) {
    grid[0] = hi;
    return grid;
  }
  const double lh = std::log(hi), ll = std::log(lo);
  for (int i = 0; i < n; ++i)
    grid[i] = std::exp(lh + (ll - lh) * double(i) / double(n - 1));
  return grid;
}

std::vector<double> parse_b_grid(const std::string& s) {
  double lo, hi, step;
  if (std::sscanf(s.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 ||
      !(step > 0.0) || hi < lo)
    throw ValidationError("b grid must be MIN:MAX:STEP with STEP > 0");
  std::vector<double> grid;
  for (double b = lo; b <= hi + 1e-12; b += step) grid.push_back(b);
  return grid;
}

double init_norm(const RecurrenceSpec& spec) {
  double n = 0.0;
  for (double x : spec.init) n = std::max(n, std::abs(x));
  return n;
}

json root_groups_json(const RootDecomposition& roots) {
  json arr = json::array();
  for (const auto& g : roots.groups)
    arr.push_back({{"re", g.root.real()},
                   {"im", g.root.imag()},
                   {"multiplicity", g.multiplicity}});
  return arr;
}

const char* membership_name(Membership m) {
  switch (m) {
    case Membership::Yes: return "Yes";
    case Membership::No: return "No";
    default: return "Unknown";
  }
}

void cmd_analyze(const std::string& spec_path) {
  RecurrenceSpec spec = load_spec(spec_path);
  PolyCoeffs poly = characteristic_polynomial(spec);
  RootDecomposition roots = find_roots(poly);
  StabilityReport stab = check_stability(roots);

  json out;
  out["polynomial"] = poly.coeffs;
  out["roots"] = root_groups_json(roots);
  out["stable"] = stab.stable;
  out["kappa"] = stab.kappa;
  out["margin"] = stab.margin;

  if (stab.stable) {
    SolutionRepresentation rep = solve_representation(spec, roots);
    json coeffs = json::array();
    for (const auto& term : rep.terms) {
      json cs = json::array();
      for (const auto& c : term.coeffs)
        cs.push_back({{"re", c.real()}, {"im", c.imag()}});
      coeffs.push_back({{"root_re", term.root.real()},
                        {"root_im", term.root.imag()},
                        {"coeffs", cs}});
    }
    out["representation"] = coeffs;
    try {
      AsymptoticProfile profile = asymptotic_profile(rep, init_norm(spec));
      json terms = json::array();
      for (const auto& t : profile.terms)
        terms.push_back(
            {{"alpha", t.alpha}, {"beta", t.beta}, {"theta", t.theta}});
      out["profile"] = {{"r", profile.r},
                        {"l", profile.l},
                        {"terms", terms},
                        {"M", profile.sup_bound},
                        {"m_liminf", profile.m_liminf},
                        {"liminf_exact", profile.liminf_exact},
                        {"in_maximal_set",
                         membership_name(profile.in_maximal_set)}};
    } catch (const ZeroSolution&) {
      out["profile"] = nullptr;
    }
  }
  std::cout << out.dump(2) << "\n";
}

void cmd_variance(const std::string& spec_path, int t_max) {
  RecurrenceSpec spec = load_spec(spec_path);
  std::vector<double> traj = iterate_deterministic(spec, t_max);
  std::cout << "t,x_t,sigma_t_sq\n";
  for (int t = spec.p; t <= t_max; ++t)
    std::cout << t << "," << format_double(traj[t]) << ","
              << format_double(sigma_t_sq(spec, t)) << "\n";
  SigmaInfResult inf = sigma_inf_sq(spec);
  std::cout << "# sigma_inf_sq=" << format_double(inf.value) << "\n";
  std::cout << "# truncation_index=" << inf.truncation_index << "\n";
  std::cout << "# tail_bound=" << format_double(inf.tail_bound) << "\n";
}

void emit_curve(const TVCurve& curve) {
  std::cout << "abscissa,d,D,R\n";
  for (const auto& pt : curve.points)
    std::cout << format_double(pt.abscissa) << "," << format_double(pt.d)
              << "," << format_double(pt.D) << "," << format_double(pt.R)
              << "\n";
}

void cmd_tv_curve(const std::string& spec_path, double eps, int t_min,
                  int t_max, const std::string& b_grid_str, double window_c) {
  RecurrenceSpec spec = load_spec(spec_path);
  RootDecomposition roots = find_roots(characteristic_polynomial(spec));
  if (b_grid_str.empty()) {
    emit_curve(distance_curve(spec, roots, eps, t_min < spec.p ? spec.p : t_min,
                              t_max));
    return;
  }
  SolutionRepresentation rep = solve_representation(spec, roots);
  AsymptoticProfile profile = asymptotic_profile(rep, init_norm(spec));
  CutoffSchedule sched{profile.r, profile.l, window_c};
  emit_curve(centered_curve(spec, roots, sched, eps, parse_b_grid(b_grid_str)));
}

void cmd_cutoff(const std::string& spec_path, const std::string& eps_grid_str,
                double b_neg, double b_pos, double tol, double window_c) {
  RecurrenceSpec spec = load_spec(spec_path);
  RootDecomposition roots = find_roots(characteristic_polynomial(spec));
  SolutionRepresentation rep = solve_representation(spec, roots);
  AsymptoticProfile profile = asymptotic_profile(rep, init_norm(spec));
  CutoffSchedule sched{profile.r, profile.l, window_c};
  WindowReport report = window_cutoff_check(
      spec, roots, sched, parse_eps_grid(eps_grid_str), b_neg, b_pos, tol);

  json out;
  out["r"] = profile.r;
  out["l"] = profile.l;
  out["C"] = sched.C;
  out["b_neg"] = b_neg;
  out["b_pos"] = b_pos;
  out["tol"] = tol;
  out["sup_bound_M"] = profile.sup_bound;
  out["m_liminf"] = profile.m_liminf;
  json pts = json::array();
  for (const auto& wp : report.points) {
    json j = {{"eps", wp.eps}, {"t_eps", wp.t_eps}};
    j["d_neg"] = wp.d_neg ? json(*wp.d_neg) : json(nullptr);
    j["d_pos"] = wp.d_pos ? json(*wp.d_pos) : json(nullptr);
    j["d_half"] = wp.d_half ? json(*wp.d_half) : json(nullptr);
    j["d_threehalf"] = wp.d_threehalf ? json(*wp.d_threehalf) : json(nullptr);
    pts.push_back(j);
  }
  out["points"] = pts;
  out["verdict"] = report.pass ? "PASS" : "FAIL";
  std::cout << out.dump(2) << "\n";
}

void cmd_c3(double alpha, double r, const std::string& eps_grid_str) {
  std::cout << "eps,ratio\n";
  for (double eps : parse_eps_grid(eps_grid_str))
    std::cout << format_double(eps) << ","
              << format_double(c3_ratio(alpha, r, eps)) << "\n";
}

void cmd_simulate(const std::string& spec_path, double eps, std::int64_t paths,
                  int horizon, std::uint64_t seed) {
  RecurrenceSpec spec = load_spec(spec_path);
  if (eps > 0.0) spec.eps = eps;
  SimConfig cfg{spec, horizon, paths, seed, 0};
  SimResult res = simulate_paths(cfg);
  RootDecomposition roots = find_roots(characteristic_polynomial(spec));
  MomentReport report = validate_moments(res, spec, roots);

  json out;
  out["N"] = res.N;
  out["T"] = res.T;
  out["seed"] = res.seed;
  json checks = json::array();
  for (const auto& chk : report.checks)
    checks.push_back(
        {{"t", chk.t}, {"z_mean", chk.z_mean}, {"z_var", chk.z_var}});
  out["checks"] = checks;
  out["max_abs_z"] = report.max_abs_z;
  out["verdict"] = report.pass ? "PASS" : "FAIL";
  std::cout << out.dump(2) << "\n";
}

void cmd_oscillator(double gamma, double kappa, double h, double eps, double u,
                    double v, const std::string& out_path) {
  RecurrenceSpec spec = discretize(gamma, kappa, h, eps, u, v);
  save_spec(out_path, spec);
  StabilityRange range = stability_range(gamma, kappa);
  RootClassification cls = classify_roots(gamma, kappa, h);

  json out;
  out["spec_file"] = out_path;
  out["phi"] = spec.phi;
  out["init"] = spec.init;
  out["effective_eps"] = spec.eps;
  const char* case_name =
      range.discriminant_case == OscillatorCase::RealDistinct    ? "i"
      : range.discriminant_case == OscillatorCase::RealRepeated  ? "ii"
                                                                 : "iii";
  out["case"] = case_name;
  out["h_range"] = {{"max", range.h_max},
                    {"sharp", range.sharp},
                    {"h_star", range.h_star}};
  out["subcase"] = cls.subcase;
  out["r"] = cls.r;
  if (cls.subcase == "iii.1" || cls.subcase == "iii.2") {
    out["theta"] = cls.theta;
    if (cls.theta_rational)
      out["theta_rational"] = {{"num", cls.theta_rational->first},
                               {"den", cls.theta_rational->second}};
  }
  std::cout << out.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian perturbations of linear recurrences: exact laws, "
               "total-variation curves and cut-off diagnostics"};
  app.require_subcommand(1);

  std::string spec_path, eps_grid = "1e-2:1e-8:7", b_grid, out_path = "spec.txt";
  double eps = 1e-3, b_neg = -20.0, b_pos = 20.0, tol = 0.01, window_c = 1.0;
  double alpha = 1.0, r = 0.5;
  double gamma = 1.0, kappa = 1.0, h = 0.5, u = 1.0, v = 0.0;
  int t_min = 0, t_max = 50, horizon = 20;
  std::int64_t paths = 100000;
  std::uint64_t seed = 0;

  auto* analyze = app.add_subcommand("analyze", "roots, stability, profile");
  analyze->add_option("--spec", spec_path)->required();

  auto* variance = app.add_subcommand("variance", "x_t and sigma_t^2 table");
  variance->add_option("--spec", spec_path)->required();
  variance->add_option("--t-max", t_max);

  auto* tv = app.add_subcommand("tv-curve", "d/D/R over t or b grid");
  tv->add_option("--spec", spec_path)->required();
  tv->add_option("--eps", eps)->required();
  tv->add_option("--t-min", t_min);
  tv->add_option("--t-max", t_max);
  tv->add_option("--b-grid", b_grid, "MIN:MAX:STEP window offsets");
  tv->add_option("--window-c", window_c);

  auto* cutoff = app.add_subcommand("cutoff", "window cut-off diagnostic");
  cutoff->add_option("--spec", spec_path)->required();
  cutoff->add_option("--eps-grid", eps_grid, "START:END:COUNT, log-spaced");
  cutoff->add_option("--b-neg", b_neg);
  cutoff->add_option("--b-pos", b_pos);
  cutoff->add_option("--tol", tol);
  cutoff->add_option("--window-c", window_c);

  auto* c3 = app.add_subcommand("c3", "(t_eps)^alpha r^t_eps / eps ratios");
  c3->add_option("--alpha", alpha)->required();
  c3->add_option("--r", r)->required();
  c3->add_option("--eps-grid", eps_grid);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo moment check");
  simulate->add_option("--spec", spec_path)->required();
  simulate->add_option("--eps", eps);
  simulate->add_option("--paths", paths);
  simulate->add_option("--horizon", horizon);
  simulate->add_option("--seed", seed);

  auto* osc = app.add_subcommand("oscillator", "discretize and classify");
  osc->set_help_flag("--help", "print help");  // frees -h for the step size
  osc->add_option("--gamma", gamma)->required();
  osc->add_option("--kappa", kappa)->required();
  osc->add_option("--h", h)->required();
  osc->add_option("--eps", eps);
  osc->add_option("--u", u);
  osc->add_option("--v", v);
  osc->add_option("--out", out_path, "spec file to write");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) cmd_analyze(spec_path);
    else if (*variance) cmd_variance(spec_path, t_max);
    else if (*tv) cmd_tv_curve(spec_path, eps, t_min, t_max, b_grid, window_c);
    else if (*cutoff)
      cmd_cutoff(spec_path, eps_grid, b_neg, b_pos, tol, window_c);
    else if (*c3) cmd_c3(alpha, r, eps_grid);
    else if (*simulate)
      cmd_simulate(spec_path, simulate->count("--eps") ? eps : 0.0, paths,
                   horizon, seed);
    else if (*osc) cmd_oscillator(gamma, kappa, h, eps, u, v, out_path);
  } catch (const NonConvergence& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const IllConditioned& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
