#include "ogs/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "ogs/baselines.hpp"
#include "ogs/solver.hpp"

namespace ogs::experiments {

namespace {

enum Stream : std::uint64_t { kSignalStream = 1, kNoiseStream = 2 };

std::mt19937_64 engine(std::uint64_t seed, Stream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(kGeneratorVersion)};
  return std::mt19937_64(seq);
}

}  // namespace

RealTensor GroupSparseLayout::render(std::size_t shift) const {
  RealTensor x(Shape::vec(length));
  for (std::size_t g = 0; g < starts.size(); ++g)
    for (std::size_t j = 0; j < values[g].size(); ++j) {
      const std::size_t i = starts[g] + shift + j;
      if (i >= length) throw ValidationError("shift moves a group off the signal");
      x[i] = values[g][j];
    }
  return x;
}

GroupSparseLayout group_sparse_layout(std::uint64_t seed,
                                      const GroupSparseSpec& spec) {
  if (spec.group_len < 1 || spec.groups < 1 || !(spec.peak > 0.0))
    throw ValidationError("group sparse signal needs groups, group_len, peak > 0");
  if (spec.length < spec.group_len + spec.shift_margin)
    throw ValidationError("signal too short for its groups");
  const std::size_t last_start = spec.length - spec.group_len - spec.shift_margin;
  auto rng = engine(seed, kSignalStream);
  std::uniform_int_distribution<std::size_t> pos(0, last_start);
  std::uniform_real_distribution<double> mag(1.0, 4.0);
  std::bernoulli_distribution sign(0.5);

  GroupSparseLayout layout;
  layout.length = spec.length;
  for (int attempt = 0;; ++attempt) {
    if (attempt == 10000)
      throw ValidationError("cannot place " + std::to_string(spec.groups) +
                            " non-adjacent groups in " +
                            std::to_string(spec.length) + " samples");
    std::vector<std::size_t> starts(spec.groups);
    for (auto& s : starts) s = pos(rng);
    std::sort(starts.begin(), starts.end());
    bool ok = true;
    for (std::size_t g = 1; g < starts.size(); ++g)
      ok = ok && starts[g] > starts[g - 1] + spec.group_len;
    if (ok) {
      layout.starts = std::move(starts);
      break;
    }
  }
  double peak = 0.0;
  for (std::size_t g = 0; g < spec.groups; ++g) {
    std::vector<double> v(spec.group_len);
    for (double& a : v) {
      a = mag(rng) * (sign(rng) ? 1.0 : -1.0);
      peak = std::max(peak, std::abs(a));
    }
    layout.values.push_back(std::move(v));
  }
  for (auto& v : layout.values)
    for (double& a : v) a *= spec.peak / peak;
  return layout;
}

RealTensor group_sparse_signal(std::uint64_t seed, const GroupSparseSpec& spec) {
  return group_sparse_layout(seed, spec).render();
}

RealTensor gaussian_noise(std::size_t n, double sigma, std::uint64_t seed) {
  auto rng = engine(seed, kNoiseStream);
  std::normal_distribution<double> normal;
  RealTensor w(Shape::vec(n));
  for (std::size_t i = 0; i < n; ++i) w[i] = sigma * normal(rng);
  return w;
}

double rmse(const RealTensor& a, const RealTensor& b) {
  require_same_shape(a, b, "rmse");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(acc / static_cast<double>(a.size()));
}

DemoResult run_demo(double sigma, std::uint64_t seed, const DemoOptions& options) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma))
    throw ValidationError("sigma must be finite and >= 0");
  DemoResult r;
  r.clean = group_sparse_signal(seed);
  r.noisy = r.clean;
  const auto w = gaussian_noise(r.clean.size(), sigma, seed);
  for (std::size_t i = 0; i < w.size(); ++i) r.noisy[i] += w[i];
  r.threshold = options.threshold_factor * sigma;
  r.lambda = options.lambda_factor * sigma;
  r.soft = soft_threshold(r.noisy, r.threshold);
  if (r.lambda > 0.0) {
    OgsConfig cfg;
    cfg.lambda = r.lambda;
    cfg.group = GroupShape::vec(options.group_len);
    cfg.max_iters = options.iters;
    r.ogs = ogs_denoise(r.noisy, cfg).solution;
  } else {
    r.ogs = r.noisy;
  }
  r.rmse_noisy = rmse(r.noisy, r.clean);
  r.rmse_soft = rmse(r.soft, r.clean);
  r.rmse_ogs = rmse(r.ogs, r.clean);
  return r;
}

CompareResult run_compare(const CompareOptions& options) {
  GroupSparseSpec spec;
  spec.length = options.n;
  spec.groups = std::max<std::size_t>(1, options.n / 20);
  RealTensor y = group_sparse_signal(options.seed, spec);
  const auto w = gaussian_noise(options.n, options.sigma, options.seed);
  for (std::size_t i = 0; i < w.size(); ++i) y[i] += w[i];

  OgsConfig cfg;
  cfg.lambda = options.lambda;
  cfg.group = GroupShape::vec(options.k);
  cfg.max_iters = options.iters;
  AdmmConfig admm;
  admm.lambda = options.lambda;
  admm.group = cfg.group;
  admm.rho = options.rho;
  admm.iters = options.iters;
  return {ogs_denoise(y, cfg).cost_history,
          admm_overlapping_prox(y, admm).cost_history};
}

PartialResult run_partial(const PartialOptions& options) {
  if (options.k < 1 || options.trials < 1 || options.lambda_points < 1 ||
      !(options.lambda_lo > 0.0) || !(options.lambda_hi >= options.lambda_lo))
    throw ValidationError("invalid partial overlap experiment options");
  for (double s : options.sigmas)
    if (!(s > 0.0)) throw ValidationError("sigmas must be positive");
  for (std::size_t m : options.overlaps)
    if (m >= options.k)
      throw ValidationError("overlap must lie in [0, K-1], got " + std::to_string(m));

  const std::size_t ns = options.sigmas.size(), nm = options.overlaps.size();
  std::vector<double> factors(options.lambda_points);
  for (std::size_t l = 0; l < factors.size(); ++l) {
    const double t = factors.size() == 1
                         ? 0.0
                         : static_cast<double>(l) / static_cast<double>(factors.size() - 1);
    factors[l] = options.lambda_lo * std::pow(options.lambda_hi / options.lambda_lo, t);
  }
  GroupSparseSpec spec;
  spec.group_len = options.k;
  spec.shift_margin = options.k - 1;

  // per_trial[t][s * nm + m]: best-lambda RMSE summed over translations.
  std::vector<std::vector<double>> per_trial(options.trials,
                                             std::vector<double>(ns * nm, 0.0));
  auto run_trial = [&](std::size_t t) {
    const std::uint64_t seed = options.seed + t;
    const auto layout = group_sparse_layout(seed, spec);
    const auto unit = gaussian_noise(spec.length, 1.0, seed);
    OgsConfig cfg;
    cfg.max_iters = options.iters;
    for (std::size_t p = 0; p < options.k; ++p) {
      const RealTensor clean = layout.render(p);
      for (std::size_t s = 0; s < ns; ++s) {
        const double sigma = options.sigmas[s];
        RealTensor y = clean;
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += sigma * unit[i];
        for (std::size_t m = 0; m < nm; ++m) {
          double best = std::numeric_limits<double>::infinity();
          for (double f : factors) {
            cfg.lambda = f * sigma;
            const auto x = partial_overlap_denoise(y, options.k, options.overlaps[m],
                                                   0, cfg);
            best = std::min(best, rmse(x.solution, clean));
          }
          per_trial[t][s * nm + m] += best;
        }
      }
    }
  };

  unsigned threads = options.threads ? options.threads
                                     : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, options.trials));
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i)
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < options.trials; t = next++) run_trial(t);
      });
  }

  PartialResult result;
  result.overlaps = options.overlaps;
  result.sigmas = options.sigmas;
  result.mean_rmse.assign(ns, std::vector<double>(nm, 0.0));
  const double count = static_cast<double>(options.trials * options.k);
  for (std::size_t s = 0; s < ns; ++s)
    for (std::size_t m = 0; m < nm; ++m) {
      double acc = 0.0;
      for (const auto& row : per_trial) acc += row[s * nm + m];
      result.mean_rmse[s][m] = acc / count;
    }
  return result;
}

}  // namespace ogs::experiments
