#include "ogs/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "ogs/baselines.hpp"
#include "ogs/solver.hpp"

namespace ogs {

double gaussian_q(double t) { return 0.5 * std::erfc(t / std::numbers::sqrt2); }

double soft_sigma_real(double threshold) {
  if (!(threshold >= 0.0)) throw ValidationError("threshold must be >= 0");
  const double t = threshold;
  const double var = 2.0 * (1.0 + t * t) * gaussian_q(t) -
                     t * std::sqrt(2.0 / std::numbers::pi) * std::exp(-0.5 * t * t);
  return std::sqrt(std::max(var, 0.0));
}

double soft_sigma_complex(double threshold) {
  if (!(threshold >= 0.0)) throw ValidationError("threshold must be >= 0");
  const double t = threshold;
  const double var = std::exp(-t * t) - 2.0 * std::sqrt(std::numbers::pi) * t *
                                            gaussian_q(std::numbers::sqrt2 * t);
  return std::sqrt(std::max(var, 0.0));
}

double soft_sigma(double threshold, Field field) {
  return field == Field::Real ? soft_sigma_real(threshold)
                              : soft_sigma_complex(threshold);
}

double invert_soft_sigma(double target, Field field) {
  if (!(target > 0.0 && target < 1.0))
    throw ValidationError("target sigma must lie in (0, 1)");
  double lo = 0.0, hi = 1.0;
  while (soft_sigma(hi, field) > target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 64.0) throw RangeError("target sigma too small to invert");
  }
  // Bisect to machine resolution; |sigma(T) - target| ends far below 1e-6.
  for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (soft_sigma(mid, field) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double slope_approximation(const GroupShape& group, Field field) {
  const double d = static_cast<double>(group.cardinality());
  if (field == Field::Real)
    return std::numbers::sqrt2 *
           std::exp(std::lgamma(0.5 * d + 0.5) - std::lgamma(0.5 * d));
  return std::exp(std::lgamma(d + 0.5) - std::lgamma(d));
}

void CalibrationTable::validate() const {
  group.validate();
  if (points.empty()) throw ValidationError("calibration table has no points");
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto& p = points[k];
    if (!(p.lambda >= 0.0) || !std::isfinite(p.lambda))
      throw ValidationError("calibration lambdas must be finite and >= 0");
    if (!(p.sigma_x >= 0.0) || !std::isfinite(p.sigma_x))
      throw ValidationError("calibration sigma_x must be finite and >= 0");
    if (k > 0 && !(p.lambda > points[k - 1].lambda))
      throw ValidationError("calibration lambdas must be strictly increasing");
  }
}

std::string noise_rng_name() { return "mt19937_64+std::normal_distribution"; }

RealTensor standard_normal(const Shape& shape, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  RealTensor out(shape);
  for (auto& v : out.data()) v = normal(gen);
  return out;
}

ComplexTensor standard_complex_normal(const Shape& shape, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexTensor out(shape);
  for (auto& v : out.data()) {
    const double re = normal(gen);
    const double im = normal(gen);
    v = Complex(re, im);
  }
  return out;
}

template <class T>
double sample_std(const Tensor<T>& x) {
  if (x.size() < 2) return 0.0;
  T mean{};
  for (const auto& v : x.data()) mean += v;
  mean /= static_cast<double>(x.size());
  double acc = 0.0;
  for (const auto& v : x.data()) acc += abs2(v - mean);
  return std::sqrt(acc / static_cast<double>(x.size() - 1));
}

template double sample_std(const Tensor<double>&);
template double sample_std(const Tensor<Complex>&);

std::vector<double> log_lambda_grid(double lo, double hi, std::size_t points) {
  if (!(lo > 0.0 && hi > lo) || points < 2)
    throw ValidationError("lambda grid needs 0 < lo < hi and >= 2 points");
  std::vector<double> grid{0.0};
  const double step = std::log(hi / lo) / static_cast<double>(points - 1);
  for (std::size_t k = 0; k < points; ++k)
    grid.push_back(lo * std::exp(step * static_cast<double>(k)));
  grid.back() = hi;
  return grid;
}

Shape default_sample_shape(const GroupShape& group) {
  return group.ndim == 2 ? Shape::mat(1000, 1000) : Shape::vec(1000000);
}

namespace {

GroupShape as_2d(const GroupShape& g) { return GroupShape::mat(g.rows, g.cols); }

void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw ValidationError("empty lambda grid");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] >= 0.0) || !std::isfinite(grid[k]))
      throw ValidationError("lambda grid values must be finite and >= 0");
    if (k > 0 && !(grid[k] > grid[k - 1]))
      throw ValidationError("lambda grid must be strictly increasing");
  }
}

template <class T>
Tensor<T> shrink_noise(const Tensor<T>& noise, const GroupShape& group,
                       double lambda, int iters) {
  if (lambda == 0.0) return noise;
  if (group.cardinality() == 1) return soft_threshold(noise, lambda);
  OgsConfig cfg;
  cfg.lambda = lambda;
  cfg.group = group;
  cfg.max_iters = iters;
  cfg.boundary = Boundary::Periodic;
  return ogs_denoise(noise, cfg).solution;
}

template <class T>
double shrunk_sigma(const Tensor<T>& noise, const GroupShape& group,
                    double lambda, int iters) {
  return sample_std(shrink_noise(noise, group, lambda, iters));
}

template <class T>
std::vector<double> sweep(const Tensor<T>& noise, const GroupShape& group,
                          int iters, std::span<const double> grid,
                          unsigned threads) {
  std::vector<double> sigma(grid.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(grid.size()));
  auto work = [&](unsigned worker) {
    for (std::size_t k = worker; k < grid.size(); k += threads)
      sigma[k] = shrunk_sigma(noise, group, grid[k], iters);
  };
  if (threads <= 1) {
    work(0);
    return sigma;
  }
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  pool.clear();
  return sigma;
}

template <class T>
Tensor<T> draw_noise(const Shape& shape, std::uint64_t seed) {
  if constexpr (std::is_same_v<T, double>)
    return standard_normal(shape, seed);
  else
    return standard_complex_normal(shape, seed);
}

}  // namespace

CalibrationTable simulate_sigma_curve(const GroupShape& group, Field field,
                                      int iters,
                                      std::span<const double> lambda_grid,
                                      const Shape& sample_shape,
                                      std::uint64_t seed,
                                      const SimulationOptions& options) {
  group.validate_for(sample_shape);
  if (sample_shape.rows < group.rows || sample_shape.cols < group.cols)
    throw ValidationError("sample shape " + sample_shape.str() +
                          " is smaller than group " + group.str2d());
  if (iters < 1) throw ValidationError("iters must be >= 1");
  check_grid(lambda_grid);

  CalibrationTable table;
  table.group = as_2d(group);
  table.field = field;
  table.iters = iters;
  table.sample_count = sample_shape.size();
  table.seed = seed;
  table.rng = noise_rng_name();

  std::vector<double> sigma;
  if (field == Field::Real)
    sigma = sweep(draw_noise<double>(sample_shape, seed), group, iters,
                  lambda_grid, options.threads);
  else
    sigma = sweep(draw_noise<Complex>(sample_shape, seed), group, iters,
                  lambda_grid, options.threads);
  for (std::size_t k = 0; k < lambda_grid.size(); ++k)
    table.points.push_back({lambda_grid[k], sigma[k]});
  return table;
}

CalibrationTable analytic_soft_table(Field field,
                                     std::span<const double> lambda_grid) {
  check_grid(lambda_grid);
  CalibrationTable table;
  table.group = GroupShape::mat(1, 1);
  table.field = field;
  table.iters = 0;
  table.sample_count = 0;
  table.seed = 0;
  table.rng = "analytic";
  for (double t : lambda_grid) table.points.push_back({t, soft_sigma(t, field)});
  return table;
}

double lookup_lambda(const CalibrationTable& table, double target_sigma) {
  table.validate();
  const auto& pts = table.points;
  if (!(target_sigma > 0.0))
    throw RangeError("target sigma must be positive");
  if (target_sigma > pts.front().sigma_x || target_sigma < pts.back().sigma_x)
    throw RangeError("target sigma " + std::to_string(target_sigma) +
                     " lies outside the table range [" +
                     std::to_string(pts.back().sigma_x) + ", " +
                     std::to_string(pts.front().sigma_x) +
                     "]; simulate a wider lambda grid");
  std::size_t k = 0;
  while (pts[k].sigma_x > target_sigma) ++k;
  if (pts[k].sigma_x == target_sigma || k == 0) return pts[k].lambda;
  const auto& a = pts[k - 1];
  const auto& b = pts[k];
  if (a.lambda > 0.0 && b.sigma_x > 0.0) {
    const double t = std::log(target_sigma / a.sigma_x) / std::log(b.sigma_x / a.sigma_x);
    return a.lambda * std::exp(t * std::log(b.lambda / a.lambda));
  }
  const double t = (target_sigma - a.sigma_x) / (b.sigma_x - a.sigma_x);
  return a.lambda + t * (b.lambda - a.lambda);
}

namespace {

template <class T>
ShrinkageHistogram summarize(const Tensor<T>& x, std::size_t bins) {
  ShrinkageHistogram h;
  h.sigma_x = sample_std(x);
  std::vector<double> rest;
  std::size_t zeros = 0;
  for (const auto& v : x.data()) {
    if (std::abs(v) <= kZeroTolerance)
      ++zeros;
    else
      rest.push_back(std::real(v));
  }
  const double n = static_cast<double>(x.size());
  h.zero_mass = static_cast<double>(zeros) / n;
  if (bins == 0) return h;
  double span = 0.0;
  for (double v : rest) span = std::max(span, std::abs(v));
  if (span == 0.0) span = 1.0;
  const double width = 2.0 * span / static_cast<double>(bins);
  h.edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b)
    h.edges[b] = -span + width * static_cast<double>(b);
  h.density.assign(bins, 0.0);
  for (double v : rest) {
    auto b = static_cast<std::size_t>((v + span) / width);
    h.density[std::min(b, bins - 1)] += 1.0;
  }
  for (double& d : h.density) d /= n * width;
  return h;
}

template <class T>
ShrinkageHistogram histogram_for(const GroupShape& group, double lambda,
                                 int iters, const Shape& shape,
                                 std::uint64_t seed, std::size_t bins) {
  return summarize(shrink_noise(draw_noise<T>(shape, seed), group, lambda, iters),
                   bins);
}

}  // namespace

ShrinkageHistogram shrinkage_histogram(const GroupShape& group, Field field,
                                       double lambda, int iters,
                                       const Shape& sample_shape,
                                       std::uint64_t seed, std::size_t bins) {
  group.validate_for(sample_shape);
  if (!(lambda >= 0.0)) throw ValidationError("lambda must be >= 0");
  if (iters < 1) throw ValidationError("iters must be >= 1");
  if (field == Field::Real)
    return histogram_for<double>(group, lambda, iters, sample_shape, seed, bins);
  return histogram_for<Complex>(group, lambda, iters, sample_shape, seed, bins);
}

}  // namespace ogs
