#pragma once

#include <span>
#include <vector>

#include "ogs/tensor.hpp"

namespace ogs {

/// How groups treat samples beyond the array edge. Zero padding is the model
/// used for denoising; periodic wrap-around is used to simulate stationary
/// noise fields without edge effects.
enum class Boundary { Zero, Periodic };

/// Sliding-window sums over a group anchored at every index of the array.
///
/// Both passes are separable per axis and treat samples outside the array as
/// zero. `forward` computes out(i) = sum_{j in J} in(i + j) (the group energy
/// when `in` holds |x|^2); `backward` computes out(i) = sum_{j in J} in(i - j),
/// i.e. the sum over every group that contains index i.
///
/// Windows are summed term by term rather than with a running accumulator so
/// that the result never suffers cancellation: every sum of nonnegative terms
/// stays >= each of its terms. Cost per pass is O(N * (K1 + K2)).
class WindowSum {
 public:
  WindowSum(Shape shape, GroupShape group, Boundary boundary = Boundary::Zero);

  void forward(std::span<const double> in, std::span<double> out);
  void backward(std::span<const double> in, std::span<double> out);

  const Shape& shape() const { return shape_; }
  const GroupShape& group() const { return group_; }

 private:
  Shape shape_;
  GroupShape group_;
  Boundary boundary_;
  std::vector<double> scratch_;
};

/// Group energies g(i) = sum_{j in J} |x(i + j)|^2 for every anchor i.
template <class T>
std::vector<double> group_energies(const Tensor<T>& x, const GroupShape& group,
                                   Boundary boundary = Boundary::Zero);

/// Overlapping-group penalty: sum over anchors of the group's Euclidean norm.
template <class T>
double penalty(const Tensor<T>& x, const GroupShape& group,
               Boundary boundary = Boundary::Zero);

/// Smoothed penalty: sum over anchors of sqrt(||group||^2 + epsilon).
template <class T>
double penalty_smoothed(const Tensor<T>& x, const GroupShape& group,
                        double epsilon);

/// 0.5 * ||y - x||^2 + lambda * penalty(x).
template <class T>
double cost(const Tensor<T>& y, const Tensor<T>& x, double lambda,
            const GroupShape& group);

/// Same as `cost` with the smoothed penalty.
template <class T>
double cost_smoothed(const Tensor<T>& y, const Tensor<T>& x, double lambda,
                     const GroupShape& group, double epsilon);

/// 0.5 * ||y - x||^2.
template <class T>
double half_residual(const Tensor<T>& y, const Tensor<T>& x);

}  // namespace ogs
