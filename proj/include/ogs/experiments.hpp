#pragma once

#include <cstdint>
#include <vector>

#include "ogs/tensor.hpp"

namespace ogs::experiments {

/// Bumped whenever the synthetic signal generator changes its output.
inline constexpr int kGeneratorVersion = 1;

/// Sparse 1D test signal: `groups` runs of `group_len` nonzero samples at
/// non-adjacent random positions. Magnitudes are uniform in [1, 4] with
/// random signs; the whole signal is scaled so max |x| == peak. The last
/// `shift_margin` samples stay free so the signal can be translated.
struct GroupSparseSpec {
  std::size_t length = 100;
  std::size_t groups = 5;
  std::size_t group_len = 5;
  double peak = 4.0;
  std::size_t shift_margin = 4;
};

struct GroupSparseLayout {
  std::size_t length = 0;
  std::vector<std::size_t> starts;
  std::vector<std::vector<double>> values;

  /// Signal with every group moved `shift` samples to the right.
  RealTensor render(std::size_t shift = 0) const;
};

GroupSparseLayout group_sparse_layout(std::uint64_t seed,
                                      const GroupSparseSpec& spec = {});
RealTensor group_sparse_signal(std::uint64_t seed,
                               const GroupSparseSpec& spec = {});

/// Seeded white Gaussian noise; independent of the signal stream of the
/// same seed.
RealTensor gaussian_noise(std::size_t n, double sigma, std::uint64_t seed);

double rmse(const RealTensor& a, const RealTensor& b);

struct DemoOptions {
  std::size_t group_len = 5;
  double lambda_factor = 0.68;
  double threshold_factor = 3.0;
  int iters = 25;
};

struct DemoResult {
  RealTensor clean, noisy, soft, ogs;
  double lambda = 0.0;
  double threshold = 0.0;
  double rmse_noisy = 0.0, rmse_soft = 0.0, rmse_ogs = 0.0;
};

/// Soft thresholding at T = threshold_factor * sigma against OGS with
/// lambda = lambda_factor * sigma on one seeded noisy signal.
DemoResult run_demo(double sigma, std::uint64_t seed,
                    const DemoOptions& options = {});

struct CompareOptions {
  std::size_t n = 100;
  std::size_t k = 5;
  double lambda = 0.34;
  double sigma = 0.5;
  int iters = 2000;
  std::uint64_t seed = 1;
  double rho = 1.0;
};

struct CompareResult {
  std::vector<double> ogs_cost;
  std::vector<double> admm_cost;
};

/// Cost histories of OGS and the ADMM oracle on one seeded noisy signal.
CompareResult run_compare(const CompareOptions& options);

struct PartialOptions {
  std::size_t k = 5;
  std::vector<std::size_t> overlaps{0, 1, 2, 3, 4};
  std::vector<double> sigmas{0.5, 1.0, 2.0};
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  /// Lambda grid: `lambda_points` log-spaced values over sigma * [lo, hi].
  std::size_t lambda_points = 40;
  double lambda_lo = 0.05;
  double lambda_hi = 2.0;
  int iters = 50;
  unsigned threads = 0;
};

struct PartialResult {
  std::vector<std::size_t> overlaps;
  std::vector<double> sigmas;
  /// mean_rmse[s][m]: sigma index s, overlap index m.
  std::vector<std::vector<double>> mean_rmse;
};

/// For every overlap M, the RMSE at the best lambda of the grid, averaged
/// over trials and over all K translations of each trial's signal.
PartialResult run_partial(const PartialOptions& options);

}  // namespace ogs::experiments
