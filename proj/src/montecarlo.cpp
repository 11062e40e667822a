#include "cutoff_lab/montecarlo.hpp"

#include <cmath>
#include <cstdlib>
#include <thread>

#include "cutoff_lab/moments.hpp"
#include "cutoff_lab/recurrence.hpp"

namespace cutoff_lab {

void SimConfig::validate() const {
  spec.validate();
  if (T < spec.p) throw ValidationError("horizon T must be >= p");
  if (N < 1) throw ValidationError("path count N must be >= 1");
}

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 33;
  z *= 0xff51afd7ed558ccdULL;
  z ^= z >> 33;
  z *= 0xc4ceb9fe1a85ec53ULL;
  z ^= z >> 33;
  return z;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CUTOFF_LAB_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

constexpr std::int64_t kBlockPaths = 4096;

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t path,
                       std::uint64_t t) {
  std::uint64_t h = mix64(seed ^ (path * 0x9e3779b97f4a7c15ULL));
  h = mix64(h ^ (t * 0xd1b54a32d192ed03ULL));
  // 53 mantissa bits, offset into the open interval (0, 1).
  return double(h >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

double inv_std_normal_cdf(double u) {
  if (!(u > 0.0 && u < 1.0))
    throw DomainError("inverse CDF requires u in (0,1)");
  // Acklam's rational approximation.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (u < plow) {
    double q = std::sqrt(-2.0 * std::log(u));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (u <= 1.0 - plow) {
    double q = u - 0.5;
    double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    double q = std::sqrt(-2.0 * std::log(1.0 - u));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // One Halley refinement against the erfc-based CDF.
  const double e = 0.5 * std::erfc(-x * 0.70710678118654752440) - u;
  const double pdf = 0.39894228040143267794 * std::exp(-0.5 * x * x);
  if (pdf > 0.0) {
    const double w = e / pdf;
    x -= w / (1.0 + 0.5 * x * w);
  }
  return x;
}

namespace {

// Per-block accumulators of deviations from the deterministic trajectory.
struct BlockMoments {
  std::vector<double> s1;  // sum (X_t - x_t)
  std::vector<double> s2;  // sum (X_t - x_t)^2
};

BlockMoments run_block(const SimConfig& cfg, const std::vector<double>& det,
                       std::int64_t path_begin, std::int64_t path_end) {
  const int p = cfg.spec.p;
  const int T = cfg.T;
  BlockMoments bm;
  bm.s1.assign(T + 1, 0.0);
  bm.s2.assign(T + 1, 0.0);
  std::vector<double> x(T + 1);
  for (std::int64_t path = path_begin; path < path_end; ++path) {
    for (int t = 0; t < p; ++t) x[t] = cfg.spec.init[t];
    for (int t = p; t <= T; ++t) {
      double v = 0.0;
      for (int i = 0; i < p; ++i) v += cfg.spec.phi[i] * x[t - 1 - i];
      const double u = counter_uniform(cfg.seed, std::uint64_t(path),
                                       std::uint64_t(t));
      x[t] = v + cfg.spec.eps * inv_std_normal_cdf(u);
    }
    for (int t = 0; t <= T; ++t) {
      const double dev = x[t] - det[t];
      bm.s1[t] += dev;
      bm.s2[t] += dev * dev;
    }
  }
  return bm;
}

}  // namespace

SimResult simulate_paths(const SimConfig& cfg) {
  cfg.validate();
  const std::vector<double> det = iterate_deterministic(cfg.spec, cfg.T);
  const std::int64_t nblocks = (cfg.N + kBlockPaths - 1) / kBlockPaths;
  std::vector<BlockMoments> blocks(nblocks);

  const int nthreads =
      static_cast<int>(std::min<std::int64_t>(resolve_threads(cfg.threads),
                                              nblocks));
  if (nthreads <= 1) {
    for (std::int64_t blk = 0; blk < nblocks; ++blk) {
      std::int64_t begin = blk * kBlockPaths;
      std::int64_t end = std::min<std::int64_t>(begin + kBlockPaths, cfg.N);
      blocks[blk] = run_block(cfg, det, begin, end);
    }
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < nthreads; ++w) {
      pool.emplace_back([&, w] {
        for (std::int64_t blk = w; blk < nblocks; blk += nthreads) {
          std::int64_t begin = blk * kBlockPaths;
          std::int64_t end = std::min<std::int64_t>(begin + kBlockPaths, cfg.N);
          blocks[blk] = run_block(cfg, det, begin, end);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  // Fixed-order reduction: identical bits for any thread count.
  SimResult res;
  res.N = cfg.N;
  res.T = cfg.T;
  res.seed = cfg.seed;
  res.sample_mean.assign(cfg.T + 1, 0.0);
  res.sample_var.assign(cfg.T + 1, 0.0);
  std::vector<double> s1(cfg.T + 1, 0.0), s2(cfg.T + 1, 0.0);
  for (const auto& bm : blocks) {
    for (int t = 0; t <= cfg.T; ++t) {
      s1[t] += bm.s1[t];
      s2[t] += bm.s2[t];
    }
  }
  const double N = double(cfg.N);
  for (int t = 0; t <= cfg.T; ++t) {
    res.sample_mean[t] = det[t] + s1[t] / N;
    res.sample_var[t] =
        cfg.N > 1 ? std::max(0.0, (s2[t] - s1[t] * s1[t] / N) / (N - 1.0))
                  : 0.0;
  }
  return res;
}

std::vector<double> sample_at(const SimConfig& cfg, int t, std::int64_t count) {
  cfg.validate();
  if (t < 0 || t > cfg.T) throw DomainError("t outside horizon");
  const int p = cfg.spec.p;
  std::vector<double> out(count);
  std::vector<double> x(cfg.T + 1);
  for (std::int64_t path = 0; path < count; ++path) {
    for (int s = 0; s < p; ++s) x[s] = cfg.spec.init[s];
    for (int s = p; s <= t; ++s) {
      double v = 0.0;
      for (int i = 0; i < p; ++i) v += cfg.spec.phi[i] * x[s - 1 - i];
      const double u = counter_uniform(cfg.seed, std::uint64_t(path),
                                       std::uint64_t(s));
      x[s] = v + cfg.spec.eps * inv_std_normal_cdf(u);
    }
    out[path] = x[t];
  }
  return out;
}

MomentReport validate_moments(const SimResult& res, const RecurrenceSpec& spec,
                              const RootDecomposition& roots) {
  spec.validate();
  if (!check_stability(roots).stable) throw Unstable("spec is not stable");
  const std::vector<double> det = iterate_deterministic(spec, res.T);
  const double N = double(res.N);

  MomentReport report;
  for (int t = spec.p; t <= res.T; ++t) {
    const double var_t = spec.eps * spec.eps * sigma_t_sq(spec, t);
    MomentCheck chk;
    chk.t = t;
    chk.z_mean = (res.sample_mean[t] - det[t]) / std::sqrt(var_t / N);
    chk.z_var =
        (res.sample_var[t] - var_t) / (var_t * std::sqrt(2.0 / (N - 1.0)));
    report.max_abs_z = std::max({report.max_abs_z, std::abs(chk.z_mean),
                                 std::abs(chk.z_var)});
    report.checks.push_back(chk);
  }
  report.pass = report.max_abs_z <= 5.0;
  return report;
}

}  // namespace cutoff_lab
