#include "ogs/penalty.hpp"

#include <algorithm>
#include <cmath>

namespace ogs {

namespace {

void row_forward(const double* in, double* out, std::size_t n, std::size_t k,
                 bool wrap) {
  std::copy(in, in + n, out);
  for (std::size_t s = 1; s < k && s < n; ++s) {
    for (std::size_t c = 0; c + s < n; ++c) out[c] += in[c + s];
    if (wrap)
      for (std::size_t c = n - s; c < n; ++c) out[c] += in[c + s - n];
  }
}

void row_backward(const double* in, double* out, std::size_t n, std::size_t k,
                  bool wrap) {
  std::copy(in, in + n, out);
  for (std::size_t s = 1; s < k && s < n; ++s) {
    for (std::size_t c = s; c < n; ++c) out[c] += in[c - s];
    if (wrap)
      for (std::size_t c = 0; c < s; ++c) out[c] += in[c + n - s];
  }
}

}  // namespace

WindowSum::WindowSum(Shape shape, GroupShape group, Boundary boundary)
    : shape_(shape), group_(group), boundary_(boundary) {
  group_.validate_for(shape_);
  if (group_.rows > 1 && group_.cols > 1) scratch_.resize(shape_.size());
}

void WindowSum::forward(std::span<const double> in, std::span<double> out) {
  const std::size_t R = shape_.rows, C = shape_.cols;
  const std::size_t K1 = group_.rows, K2 = group_.cols;
  const bool both = K1 > 1 && K2 > 1;
  double* mid = both ? scratch_.data() : out.data();
  const bool wrap = boundary_ == Boundary::Periodic;
  if (K2 > 1 || K1 == 1) {
    for (std::size_t r = 0; r < R; ++r)
      row_forward(in.data() + r * C, mid + r * C, C, K2, wrap);
  }
  if (K1 == 1) return;
  const double* src = (K2 > 1) ? mid : in.data();
  for (std::size_t r = 0; r < R; ++r) {
    double* o = out.data() + r * C;
    std::copy(src + r * C, src + (r + 1) * C, o);
    for (std::size_t s = 1; s < K1 && s < R; ++s) {
      if (r + s >= R && !wrap) break;
      const double* a = src + ((r + s) % R) * C;
      for (std::size_t c = 0; c < C; ++c) o[c] += a[c];
    }
  }
}

void WindowSum::backward(std::span<const double> in, std::span<double> out) {
  const std::size_t R = shape_.rows, C = shape_.cols;
  const std::size_t K1 = group_.rows, K2 = group_.cols;
  const bool both = K1 > 1 && K2 > 1;
  double* mid = both ? scratch_.data() : out.data();
  const bool wrap = boundary_ == Boundary::Periodic;
  if (K2 > 1 || K1 == 1) {
    for (std::size_t r = 0; r < R; ++r)
      row_backward(in.data() + r * C, mid + r * C, C, K2, wrap);
  }
  if (K1 == 1) return;
  const double* src = (K2 > 1) ? mid : in.data();
  for (std::size_t r = 0; r < R; ++r) {
    double* o = out.data() + r * C;
    std::copy(src + r * C, src + (r + 1) * C, o);
    for (std::size_t s = 1; s < K1 && s < R; ++s) {
      if (s > r && !wrap) break;
      const double* a = src + ((r + R - s) % R) * C;
      for (std::size_t c = 0; c < C; ++c) o[c] += a[c];
    }
  }
}

template <class T>
std::vector<double> group_energies(const Tensor<T>& x, const GroupShape& group,
                                   Boundary boundary) {
  WindowSum sums(x.shape(), group, boundary);
  std::vector<double> a(x.size()), g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) a[i] = abs2(x[i]);
  sums.forward(a, g);
  return g;
}

template <class T>
double penalty(const Tensor<T>& x, const GroupShape& group, Boundary boundary) {
  x.validate_finite("penalty input");
  double total = 0.0;
  for (double g : group_energies(x, group, boundary)) total += std::sqrt(g);
  return total;
}

template <class T>
double penalty_smoothed(const Tensor<T>& x, const GroupShape& group,
                        double epsilon) {
  if (!(epsilon > 0.0))
    throw ValidationError("smoothed penalty needs epsilon > 0");
  x.validate_finite("penalty input");
  double total = 0.0;
  for (double g : group_energies(x, group)) total += std::sqrt(g + epsilon);
  return total;
}

template <class T>
double half_residual(const Tensor<T>& y, const Tensor<T>& x) {
  require_same_shape(y, x, "cost");
  double acc = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) acc += abs2(y[i] - x[i]);
  return 0.5 * acc;
}

template <class T>
double cost(const Tensor<T>& y, const Tensor<T>& x, double lambda,
            const GroupShape& group) {
  return half_residual(y, x) + lambda * penalty(x, group);
}

template <class T>
double cost_smoothed(const Tensor<T>& y, const Tensor<T>& x, double lambda,
                     const GroupShape& group, double epsilon) {
  return half_residual(y, x) + lambda * penalty_smoothed(x, group, epsilon);
}

#define OGS_INSTANTIATE(T)                                                   \
  template std::vector<double> group_energies(const Tensor<T>&,              \
                                              const GroupShape&, Boundary);  \
  template double penalty(const Tensor<T>&, const GroupShape&, Boundary);    \
  template double penalty_smoothed(const Tensor<T>&, const GroupShape&,      \
                                   double);                                  \
  template double half_residual(const Tensor<T>&, const Tensor<T>&);         \
  template double cost(const Tensor<T>&, const Tensor<T>&, double,           \
                       const GroupShape&);                                   \
  template double cost_smoothed(const Tensor<T>&, const Tensor<T>&, double,  \
                                const GroupShape&, double);

OGS_INSTANTIATE(double)
OGS_INSTANTIATE(Complex)
#undef OGS_INSTANTIATE

}  // namespace ogs
