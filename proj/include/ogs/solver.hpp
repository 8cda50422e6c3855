#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ogs/penalty.hpp"
#include "ogs/tensor.hpp"

namespace ogs {

/// Controls for the overlapping group shrinkage iteration.
struct OgsConfig {
  double lambda = 1.0;
  GroupShape group = GroupShape::vec(1);
  int max_iters = 25;
  /// Stop once ||x_new - x_old|| / ||x_old|| drops below this. Zero runs
  /// exactly max_iters iterations.
  double rel_change_tol = 0.0;
  /// Zero selects the exact penalty; a positive value selects the smoothed one.
  double epsilon = 0.0;
  /// Active indices whose magnitude falls below zero_clamp * max|y| are set
  /// to zero and leave the active set.
  double zero_clamp = 1e-14;
  /// Zero padding by default. Periodic groups wrap around the array edges
  /// (used to simulate stationary noise); not available for partial overlap.
  Boundary boundary = Boundary::Zero;

  void validate() const;
};

template <class T>
struct SolveResult {
  Tensor<T> solution;
  /// Cost after each completed iteration.
  std::vector<double> cost_history;
  int iterations_run = 0;
  std::size_t active_count_final = 0;
};

/// One byte per sample; nonzero marks an active index.
using ActiveMask = std::vector<std::uint8_t>;

template <class T>
ActiveMask nonzero_mask(const Tensor<T>& x);

/// MM weights r(i; u) = sum over groups containing i of 1/||group||, for the
/// active indices. Inactive entries of the result are zero.
/// Throws SingularityError if a group containing an active index has zero
/// energy.
template <class T>
RealTensor weight_field(const Tensor<T>& u, const GroupShape& group,
                        const ActiveMask& active);

/// Overlapping group shrinkage: minimizes 0.5||y - x||^2 + lambda R(x) with
/// fully overlapping groups, starting from x = y. Dispatches to the smoothed
/// penalty when config.epsilon > 0.
template <class T>
SolveResult<T> ogs_denoise(const Tensor<T>& y, const OgsConfig& config);

/// Variant using sqrt(||group||^2 + epsilon); requires config.epsilon > 0.
template <class T>
SolveResult<T> ogs_denoise_smoothed(const Tensor<T>& y, const OgsConfig& config);

/// 1D only. The outer sum of the penalty runs over anchors congruent to
/// `offset` modulo the stride K - overlap. With offset > 0 one extra group
/// anchored at offset - stride (truncated at index 0) covers the leading
/// samples. config.group is ignored; groups have length `group_len`.
template <class T>
SolveResult<T> partial_overlap_denoise(const Tensor<T>& y,
                                       std::size_t group_len,
                                       std::size_t overlap, std::size_t offset,
                                       const OgsConfig& config);

/// Group anchors used by partial_overlap_denoise (may start with a negative
/// anchor when offset > 0).
std::vector<long> partial_overlap_anchors(std::size_t n, std::size_t group_len,
                                          std::size_t overlap,
                                          std::size_t offset);

/// Cost under the sub-grid penalty of partial_overlap_denoise.
template <class T>
double partial_overlap_cost(const Tensor<T>& y, const Tensor<T>& x,
                            double lambda, std::size_t group_len,
                            std::size_t overlap, std::size_t offset);

}  // namespace ogs
