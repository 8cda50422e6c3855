#include "ogs/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ogs {

void OgsConfig::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ValidationError("lambda must be positive and finite");
  if (max_iters < 1) throw ValidationError("max_iters must be >= 1");
  if (!(rel_change_tol >= 0.0))
    throw ValidationError("rel_change_tol must be >= 0");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
    throw ValidationError("epsilon must be >= 0");
  if (!(zero_clamp >= 0.0)) throw ValidationError("zero_clamp must be >= 0");
  group.validate();
}

template <class T>
ActiveMask nonzero_mask(const Tensor<T>& x) {
  ActiveMask m(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) m[i] = x[i] != T{} ? 1 : 0;
  return m;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Inverse group norms. Zero-energy groups map to +inf so that any index they
// touch ends up with r = inf, which the caller rejects for active indices.
void inverse_norms(std::span<const double> g, std::span<double> out) {
  for (std::size_t m = 0; m < g.size(); ++m)
    out[m] = g[m] > 0.0 ? 1.0 / std::sqrt(g[m]) : kInf;
}

// Fully overlapping groups anchored at every index.
class FullOverlap {
 public:
  FullOverlap(const Shape& shape, const GroupShape& group, double epsilon,
              Boundary boundary = Boundary::Zero)
      : sums_(shape, group, boundary),
        epsilon_(epsilon),
        g_(shape.size()),
        gi_(shape.size()) {}

  double penalty(std::span<const double> energy) {
    sums_.forward(energy, g_);
    double total = 0.0;
    if (epsilon_ > 0.0)
      for (double& g : g_) g += epsilon_;
    for (double g : g_) total += std::sqrt(g);
    return total;
  }

  void weights(std::span<double> r) {
    inverse_norms(g_, gi_);
    sums_.backward(gi_, r);
  }

 private:
  WindowSum sums_;
  double epsilon_;
  std::vector<double> g_;
  std::vector<double> gi_;
};

// 1D groups anchored on a sub-grid.
class SubGrid {
 public:
  SubGrid(std::size_t n, std::size_t group_len, std::vector<long> anchors,
          double epsilon)
      : n_(n),
        len_(group_len),
        anchors_(std::move(anchors)),
        epsilon_(epsilon),
        g_(anchors_.size()),
        gi_(anchors_.size()) {}

  double penalty(std::span<const double> energy) {
    double total = 0.0;
    for (std::size_t m = 0; m < anchors_.size(); ++m) {
      auto [lo, hi] = window(m);
      double g = 0.0;
      for (std::size_t i = lo; i < hi; ++i) g += energy[i];
      g_[m] = g + epsilon_;
      total += std::sqrt(g_[m]);
    }
    return total;
  }

  void weights(std::span<double> r) {
    inverse_norms(g_, gi_);
    std::fill(r.begin(), r.end(), 0.0);
    for (std::size_t m = 0; m < anchors_.size(); ++m) {
      auto [lo, hi] = window(m);
      for (std::size_t i = lo; i < hi; ++i) r[i] += gi_[m];
    }
  }

 private:
  std::pair<std::size_t, std::size_t> window(std::size_t m) const {
    const long a = anchors_[m];
    const long lo = std::max(a, 0L);
    const long hi = std::min(a + static_cast<long>(len_), static_cast<long>(n_));
    return {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
  }

  std::size_t n_;
  std::size_t len_;
  std::vector<long> anchors_;
  double epsilon_;
  std::vector<double> g_;
  std::vector<double> gi_;
};

// Shared MM loop: x(i) <- y(i) / (1 + lambda r(i; x)) on the active set.
template <class T, class Model>
SolveResult<T> run_mm(const Tensor<T>& y, const OgsConfig& cfg, Model& model,
                      bool clamp) {
  const std::size_t n = y.size();
  Tensor<T> x = y;
  ActiveMask active = nonzero_mask(y);
  std::vector<double> energy(n), r(n);
  const double threshold = clamp ? cfg.zero_clamp * max_abs(y) : 0.0;

  SolveResult<T> result;
  result.cost_history.reserve(static_cast<std::size_t>(cfg.max_iters));

  for (std::size_t i = 0; i < n; ++i) energy[i] = abs2(x[i]);
  model.penalty(energy);

  for (int it = 1; it <= cfg.max_iters; ++it) {
    model.weights(r);
    double change = 0.0, previous = 0.0, residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      T next{};
      if (active[i]) {
        if (!std::isfinite(r[i]))
          throw SingularityError("zero-energy group overlaps active index " +
                                 std::to_string(i));
        next = y[i] / (1.0 + cfg.lambda * r[i]);
        const double mag = std::abs(next);
        if (mag < threshold || mag == 0.0) {
          next = T{};
          active[i] = 0;
        }
      }
      change += abs2(next - x[i]);
      previous += abs2(x[i]);
      residual += abs2(y[i] - next);
      x[i] = next;
      energy[i] = abs2(next);
    }
    const double pen = model.penalty(energy);
    const double f = 0.5 * residual + cfg.lambda * pen;
    if (!std::isfinite(f))
      throw NumericError("cost became non-finite at iteration " +
                         std::to_string(it));
    result.cost_history.push_back(f);
    result.iterations_run = it;
    if (cfg.rel_change_tol > 0.0 &&
        (previous == 0.0 ||
         std::sqrt(change) <= cfg.rel_change_tol * std::sqrt(previous)))
      break;
  }
  result.active_count_final =
      static_cast<std::size_t>(std::count(active.begin(), active.end(), 1));
  result.solution = std::move(x);
  return result;
}

template <class T>
void validate_input(const Tensor<T>& y, const OgsConfig& config) {
  config.validate();
  y.validate_finite("observation");
}

}  // namespace

template <class T>
RealTensor weight_field(const Tensor<T>& u, const GroupShape& group,
                        const ActiveMask& active) {
  u.validate_finite("weight_field input");
  if (active.size() != u.size())
    throw ValidationError("active mask size does not match the signal");
  FullOverlap model(u.shape(), group, 0.0);
  std::vector<double> energy(u.size()), r(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) energy[i] = abs2(u[i]);
  model.penalty(energy);
  model.weights(r);
  RealTensor out(u.shape());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!active[i]) continue;
    if (!std::isfinite(r[i]))
      throw SingularityError("zero-energy group overlaps active index " +
                             std::to_string(i));
    out[i] = r[i];
  }
  return out;
}

template <class T>
SolveResult<T> ogs_denoise(const Tensor<T>& y, const OgsConfig& config) {
  if (config.epsilon > 0.0) return ogs_denoise_smoothed(y, config);
  validate_input(y, config);
  FullOverlap model(y.shape(), config.group, 0.0, config.boundary);
  return run_mm(y, config, model, /*clamp=*/true);
}

template <class T>
SolveResult<T> ogs_denoise_smoothed(const Tensor<T>& y,
                                    const OgsConfig& config) {
  if (!(config.epsilon > 0.0))
    throw ValidationError("smoothed OGS needs epsilon > 0");
  validate_input(y, config);
  FullOverlap model(y.shape(), config.group, config.epsilon, config.boundary);
  return run_mm(y, config, model, /*clamp=*/false);
}

std::vector<long> partial_overlap_anchors(std::size_t n, std::size_t group_len,
                                          std::size_t overlap,
                                          std::size_t offset) {
  if (group_len < 1) throw ValidationError("group length must be >= 1");
  if (overlap >= group_len)
    throw ValidationError("overlap must lie in [0, K-1], got " +
                          std::to_string(overlap));
  const std::size_t stride = group_len - overlap;
  if (offset >= stride)
    throw ValidationError("offset must lie in [0, stride-1], got " +
                          std::to_string(offset));
  std::vector<long> anchors;
  if (offset > 0) anchors.push_back(static_cast<long>(offset) - static_cast<long>(stride));
  for (std::size_t a = offset; a < n; a += stride)
    anchors.push_back(static_cast<long>(a));
  return anchors;
}

template <class T>
SolveResult<T> partial_overlap_denoise(const Tensor<T>& y,
                                       std::size_t group_len,
                                       std::size_t overlap, std::size_t offset,
                                       const OgsConfig& config) {
  if (y.shape().ndim != 1)
    throw ValidationError("partial overlap is implemented for 1D signals only");
  if (config.boundary != Boundary::Zero)
    throw ValidationError("partial overlap supports zero padding only");
  OgsConfig cfg = config;
  cfg.group = GroupShape::vec(group_len);
  validate_input(y, cfg);
  SubGrid model(y.size(), group_len,
                partial_overlap_anchors(y.size(), group_len, overlap, offset),
                cfg.epsilon);
  return run_mm(y, cfg, model, /*clamp=*/cfg.epsilon == 0.0);
}

template <class T>
double partial_overlap_cost(const Tensor<T>& y, const Tensor<T>& x,
                            double lambda, std::size_t group_len,
                            std::size_t overlap, std::size_t offset) {
  const double fit = half_residual(y, x);
  SubGrid model(x.size(), group_len,
                partial_overlap_anchors(x.size(), group_len, overlap, offset),
                0.0);
  std::vector<double> energy(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) energy[i] = abs2(x[i]);
  return fit + lambda * model.penalty(energy);
}

#define OGS_INSTANTIATE(T)                                                    \
  template ActiveMask nonzero_mask(const Tensor<T>&);                         \
  template RealTensor weight_field(const Tensor<T>&, const GroupShape&,       \
                                   const ActiveMask&);                        \
  template SolveResult<T> ogs_denoise(const Tensor<T>&, const OgsConfig&);    \
  template SolveResult<T> ogs_denoise_smoothed(const Tensor<T>&,              \
                                               const OgsConfig&);             \
  template SolveResult<T> partial_overlap_denoise(                            \
      const Tensor<T>&, std::size_t, std::size_t, std::size_t,                \
      const OgsConfig&);                                                      \
  template double partial_overlap_cost(const Tensor<T>&, const Tensor<T>&,    \
                                       double, std::size_t, std::size_t,      \
                                       std::size_t);

OGS_INSTANTIATE(double)
OGS_INSTANTIATE(Complex)
#undef OGS_INSTANTIATE

}  // namespace ogs
