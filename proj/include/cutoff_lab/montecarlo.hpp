#pragma once

#include <cstdint>

#include "cutoff_lab/types.hpp"

namespace cutoff_lab {

struct SimConfig {
  RecurrenceSpec spec;
  int T = 0;              // horizon, >= p
  std::int64_t N = 1;     // path count
  std::uint64_t seed = 0;
  int threads = 0;        // 0: CUTOFF_LAB_THREADS env or hardware concurrency

  void validate() const;
};

struct SimResult {
  std::vector<double> sample_mean;  // length T+1
  std::vector<double> sample_var;   // unbiased, length T+1
  std::int64_t N = 0;
  int T = 0;
  std::uint64_t seed = 0;
};

struct MomentCheck {
  int t = 0;
  double z_mean = 0.0;
  double z_var = 0.0;
};

struct MomentReport {
  std::vector<MomentCheck> checks;  // one per t in [p, T]
  double max_abs_z = 0.0;
  bool pass = false;  // all |z| <= 5
};

// Counter-based uniform in (0, 1): a pure function of (seed, path, t), so
// results are independent of threading and evaluation order.
double counter_uniform(std::uint64_t seed, std::uint64_t path, std::uint64_t t);

// Inverse standard normal CDF (Acklam initial guess + one Halley step).
double inv_std_normal_cdf(double u);

// N independent paths of the perturbed recurrence; streaming moments merged
// in fixed block order so the result is bitwise thread-count independent.
SimResult simulate_paths(const SimConfig& cfg);

// X_t for paths 0..count-1 (used for distributional spot checks).
std::vector<double> sample_at(const SimConfig& cfg, int t, std::int64_t count);

// z-scores of the empirical moments against the exact Gaussian law.
MomentReport validate_moments(const SimResult& res, const RecurrenceSpec& spec,
                              const RootDecomposition& roots);

}  // namespace cutoff_lab
