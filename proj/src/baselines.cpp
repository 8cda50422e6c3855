#include "ogs/baselines.hpp"

#include <cmath>
#include <string>

namespace ogs {

template <class T>
Tensor<T> soft_threshold(const Tensor<T>& y, double threshold) {
  if (!(threshold >= 0.0)) throw ValidationError("threshold must be >= 0");
  Tensor<T> x(y.shape());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double mag = std::abs(y[i]);
    if (mag > threshold) x[i] = y[i] * (1.0 - threshold / mag);
  }
  return x;
}

template <class T>
std::vector<T> multivariate_soft(std::span<const T> y, double lambda) {
  double e = 0.0;
  for (const auto& v : y) e += abs2(v);
  const double norm = std::sqrt(e);
  std::vector<T> x(y.size(), T{});
  if (norm > lambda) {
    const double scale = 1.0 - lambda / norm;
    for (std::size_t i = 0; i < y.size(); ++i) x[i] = y[i] * scale;
  }
  return x;
}

namespace {

// Index map of the duplicated variables: group m, slot s -> sample index, or
// -1 where the window runs past the array (zero padding).
struct Duplication {
  std::size_t groups = 0;
  std::size_t slots = 0;
  std::vector<long> index;
  std::vector<double> multiplicity;

  Duplication(const Shape& shape, const GroupShape& group)
      : groups(shape.size()), slots(group.cardinality()) {
    index.assign(groups * slots, -1);
    multiplicity.assign(shape.size(), 0.0);
    for (std::size_t r = 0; r < shape.rows; ++r)
      for (std::size_t c = 0; c < shape.cols; ++c) {
        const std::size_t m = r * shape.cols + c;
        for (std::size_t j1 = 0; j1 < group.rows; ++j1)
          for (std::size_t j2 = 0; j2 < group.cols; ++j2) {
            const std::size_t rr = r + j1, cc = c + j2;
            if (rr >= shape.rows || cc >= shape.cols) continue;
            const std::size_t i = rr * shape.cols + cc;
            index[m * slots + j1 * group.cols + j2] = static_cast<long>(i);
            multiplicity[i] += 1.0;
          }
      }
  }
};

}  // namespace

template <class T>
SolveResult<T> admm_overlapping_prox(const Tensor<T>& y,
                                     const AdmmConfig& config) {
  if (!(config.rho > 0.0)) throw ValidationError("rho must be positive");
  if (!(config.lambda > 0.0)) throw ValidationError("lambda must be positive");
  if (config.iters < 1) throw ValidationError("iters must be >= 1");
  config.group.validate_for(y.shape());
  y.validate_finite("observation");

  const Duplication dup(y.shape(), config.group);
  const std::size_t n = y.size();
  const std::size_t total = dup.groups * dup.slots;
  const double rho = config.rho;
  const double shrink = config.lambda / rho;

  Tensor<T> x = y;
  std::vector<T> z(total, T{}), u(total, T{}), v(dup.slots);
  std::vector<T> accum(n);
  for (std::size_t k = 0; k < total; ++k)
    if (dup.index[k] >= 0) z[k] = x[static_cast<std::size_t>(dup.index[k])];

  SolveResult<T> result;
  result.cost_history.reserve(static_cast<std::size_t>(config.iters));
  for (int it = 1; it <= config.iters; ++it) {
    // (a) per-group shrinkage of the duplicated variables
    for (std::size_t m = 0; m < dup.groups; ++m) {
      const std::size_t base = m * dup.slots;
      for (std::size_t s = 0; s < dup.slots; ++s) {
        const long i = dup.index[base + s];
        v[s] = i >= 0 ? x[static_cast<std::size_t>(i)] + u[base + s] : T{};
      }
      const auto shrunk = multivariate_soft<T>(v, shrink);
      for (std::size_t s = 0; s < dup.slots; ++s)
        if (dup.index[base + s] >= 0) z[base + s] = shrunk[s];
    }
    // (b) consensus: x = (y + rho * sum(z - u)) / (1 + rho * multiplicity)
    std::fill(accum.begin(), accum.end(), T{});
    for (std::size_t k = 0; k < total; ++k)
      if (dup.index[k] >= 0)
        accum[static_cast<std::size_t>(dup.index[k])] += z[k] - u[k];
    for (std::size_t i = 0; i < n; ++i)
      x[i] = (y[i] + rho * accum[i]) / (1.0 + rho * dup.multiplicity[i]);
    // (c) dual ascent
    for (std::size_t k = 0; k < total; ++k)
      if (dup.index[k] >= 0)
        u[k] += x[static_cast<std::size_t>(dup.index[k])] - z[k];

    for (std::size_t i = 0; i < n; ++i)
      if (!is_finite(x[i]))
        throw NumericError("ADMM iterate became non-finite at iteration " +
                           std::to_string(it));
    result.cost_history.push_back(cost(y, x, config.lambda, config.group));
    result.iterations_run = it;
  }
  std::size_t active = 0;
  for (std::size_t i = 0; i < n; ++i) active += x[i] != T{} ? 1 : 0;
  result.active_count_final = active;
  result.solution = std::move(x);
  return result;
}

#define OGS_INSTANTIATE(T)                                                   \
  template Tensor<T> soft_threshold(const Tensor<T>&, double);               \
  template std::vector<T> multivariate_soft(std::span<const T>, double);     \
  template SolveResult<T> admm_overlapping_prox(const Tensor<T>&,            \
                                                const AdmmConfig&);

OGS_INSTANTIATE(double)
OGS_INSTANTIATE(Complex)
#undef OGS_INSTANTIATE

}  // namespace ogs
