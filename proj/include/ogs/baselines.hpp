#pragma once

#include <span>
#include <vector>

#include "ogs/solver.hpp"
#include "ogs/tensor.hpp"

namespace ogs {

/// Elementwise soft threshold (1 - T/|y|)_+ * y. Sign preserving for real
/// data, phase preserving for complex data.
template <class T>
Tensor<T> soft_threshold(const Tensor<T>& y, double threshold);

/// Multivariate soft threshold (1 - lambda/||y||)_+ * y; the exact minimizer
/// of 0.5||y - x||^2 + lambda ||x||_2.
template <class T>
std::vector<T> multivariate_soft(std::span<const T> y, double lambda);

struct AdmmConfig {
  double lambda = 1.0;
  GroupShape group = GroupShape::vec(1);
  double rho = 1.0;
  int iters = 2000;
};

/// Variable-duplication ADMM for the overlapping group penalty. Each group
/// owns a private copy of its samples; iterations alternate a per-group
/// multivariate soft threshold, a consensus update of x and a dual update.
/// Memory is |J| copies of the signal. cost_history holds the cost of the
/// consensus iterate after every iteration.
template <class T>
SolveResult<T> admm_overlapping_prox(const Tensor<T>& y, const AdmmConfig& config);

}  // namespace ogs
