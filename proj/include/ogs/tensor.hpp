#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "ogs/errors.hpp"

namespace ogs {

using Complex = std::complex<double>;

enum class Field { Real, Complex };

std::string to_string(Field field);
Field parse_field(const std::string& text);

template <class T>
inline constexpr bool is_sample_v =
    std::is_same_v<T, double> || std::is_same_v<T, Complex>;

template <class T>
constexpr Field field_of() {
  static_assert(is_sample_v<T>);
  return std::is_same_v<T, double> ? Field::Real : Field::Complex;
}

inline double abs2(double v) { return v * v; }
inline double abs2(const Complex& v) { return std::norm(v); }

inline bool is_finite(double v) { return std::isfinite(v); }
inline bool is_finite(const Complex& v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

/// Extents of a 1D or 2D array. A 1D array of length N is stored as a single
/// row (rows == 1, cols == N) so the 2D kernels cover both cases.
struct Shape {
  int ndim = 1;
  std::size_t rows = 1;
  std::size_t cols = 0;

  static Shape vec(std::size_t n) { return Shape{1, 1, n}; }
  static Shape mat(std::size_t n1, std::size_t n2) { return Shape{2, n1, n2}; }

  std::size_t size() const { return rows * cols; }
  bool operator==(const Shape&) const = default;
  std::string str() const;
};

/// Group extents. `rows` runs along axis 0 and `cols` along axis 1; a 1D group
/// of length K is {ndim=1, rows=1, cols=K}.
struct GroupShape {
  int ndim = 1;
  std::size_t rows = 1;
  std::size_t cols = 1;

  static GroupShape vec(std::size_t k) { return GroupShape{1, 1, k}; }
  static GroupShape mat(std::size_t k1, std::size_t k2) {
    return GroupShape{2, k1, k2};
  }
  /// Parses "K" (1D) or "K1xK2" (2D).
  static GroupShape parse(const std::string& text);

  std::size_t cardinality() const { return rows * cols; }
  bool operator==(const GroupShape&) const = default;
  /// "K" for 1D groups, "K1xK2" for 2D groups.
  std::string str() const;
  /// Always "K1xK2", with 1D groups written as "1xK".
  std::string str2d() const;
  void validate() const;
  /// Checks the group can be laid over an array of the given shape.
  void validate_for(const Shape& shape) const;
};

/// Dense row-major array of real or complex samples.
template <class T>
class Tensor {
  static_assert(is_sample_v<T>);

 public:
  using value_type = T;

  Tensor() = default;
  explicit Tensor(Shape shape) : shape_(shape), data_(shape.size(), T{}) {}
  Tensor(Shape shape, std::vector<T> data)
      : shape_(shape), data_(std::move(data)) {
    if (data_.size() != shape_.size())
      throw ValidationError("tensor data length " +
                            std::to_string(data_.size()) +
                            " does not match shape " + shape_.str());
  }

  static Tensor vec(std::vector<T> data) {
    const auto n = data.size();
    return Tensor(Shape::vec(n), std::move(data));
  }

  const Shape& shape() const { return shape_; }
  std::size_t size() const { return data_.size(); }
  std::size_t rows() const { return shape_.rows; }
  std::size_t cols() const { return shape_.cols; }
  static constexpr Field field() { return field_of<T>(); }

  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * shape_.cols + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * shape_.cols + c];
  }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }
  std::vector<T>& values() { return data_; }
  const std::vector<T>& values() const { return data_; }

  /// Throws ValidationError on the first NaN/Inf sample.
  void validate_finite(const char* what = "input") const {
    for (std::size_t i = 0; i < data_.size(); ++i)
      if (!is_finite(data_[i]))
        throw ValidationError(std::string(what) +
                              " contains a non-finite sample at index " +
                              std::to_string(i));
  }

  bool operator==(const Tensor&) const = default;

 private:
  Shape shape_{};
  std::vector<T> data_;
};

using RealTensor = Tensor<double>;
using ComplexTensor = Tensor<Complex>;

template <class T>
double squared_norm(const Tensor<T>& x) {
  double acc = 0.0;
  for (const auto& v : x.data()) acc += abs2(v);
  return acc;
}

template <class T>
double max_abs(const Tensor<T>& x) {
  double m = 0.0;
  for (const auto& v : x.data()) m = std::max(m, std::abs(v));
  return m;
}

template <class T>
void require_same_shape(const Tensor<T>& a, const Tensor<T>& b,
                        const char* what) {
  if (a.shape() != b.shape())
    throw ValidationError(std::string(what) + ": shape mismatch " +
                          a.shape().str() + " vs " + b.shape().str());
}

}  // namespace ogs
