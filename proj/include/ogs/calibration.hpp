#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ogs/tensor.hpp"

namespace ogs {

// ---------------------------------------------------------------------------
// Soft-threshold attenuation of unit-variance Gaussian noise (closed form).
// ---------------------------------------------------------------------------

/// Gaussian tail probability Q(t) = P(N(0,1) > t).
double gaussian_q(double t);

/// Output std of soft(y, T) for y ~ N(0, 1).
double soft_sigma_real(double threshold);

/// Output std of soft(y, T) for circular complex y ~ CN(0, 1).
double soft_sigma_complex(double threshold);

double soft_sigma(double threshold, Field field);

/// Threshold T with soft_sigma(T) == target, by bisection. target in (0, 1).
double invert_soft_sigma(double target, Field field);

/// |d sigma_x / d lambda| at lambda = 0: the mean of a chi distribution with
/// |J| (real) or 2|J| (complex, rescaled) degrees of freedom.
double slope_approximation(const GroupShape& group, Field field);

// ---------------------------------------------------------------------------
// Monte Carlo sigma_x(lambda) curves.
// ---------------------------------------------------------------------------

struct CalibrationPoint {
  double lambda = 0.0;
  double sigma_x = 0.0;
  bool operator==(const CalibrationPoint&) const = default;
};

/// Sampled output std of OGS applied to standard normal noise, as a function
/// of lambda, for a fixed group shape, field and iteration budget.
struct CalibrationTable {
  /// Always stored in 2D form; a 1D group K is recorded as 1xK.
  GroupShape group = GroupShape::mat(1, 1);
  Field field = Field::Real;
  int iters = 0;
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;
  std::string rng;
  std::vector<CalibrationPoint> points;

  /// Lambdas nonnegative and strictly increasing; sigma_x finite, >= 0.
  void validate() const;
  bool operator==(const CalibrationTable&) const = default;
};

/// Name of the noise generator written to table headers.
std::string noise_rng_name();

/// I.i.d. N(0,1) samples from a seeded mt19937_64.
RealTensor standard_normal(const Shape& shape, std::uint64_t seed);

/// I.i.d. circular complex normal samples with unit total variance
/// (real and imaginary parts each of variance 1/2).
ComplexTensor standard_complex_normal(const Shape& shape, std::uint64_t seed);

/// Sample standard deviation (mean removed, n - 1 normalization).
template <class T>
double sample_std(const Tensor<T>& x);

/// lambda = 0 followed by `points` log-spaced values over [lo, hi].
std::vector<double> log_lambda_grid(double lo = 0.01, double hi = 8.0,
                                    std::size_t points = 100);

/// 1000x1000 for 2D groups, 10^6 samples for 1D groups.
Shape default_sample_shape(const GroupShape& group);

struct SimulationOptions {
  /// Worker threads across lambda values; 0 picks hardware concurrency.
  unsigned threads = 0;
};

/// Draws one noise array from `seed` and runs OGS for exactly `iters`
/// iterations at every lambda of the grid, recording the output std. Groups
/// wrap around the array edges so the field behaves as stationary noise; with
/// zero padding, under-shrunk edge samples leak inward and bias the tail.
/// The result does not depend on the thread count.
CalibrationTable simulate_sigma_curve(const GroupShape& group, Field field,
                                      int iters,
                                      std::span<const double> lambda_grid,
                                      const Shape& sample_shape,
                                      std::uint64_t seed,
                                      const SimulationOptions& options = {});

/// Analytic table for 1x1 groups (soft thresholding), no simulation.
CalibrationTable analytic_soft_table(Field field,
                                     std::span<const double> lambda_grid);

/// Lambda (for unit noise) at which the tabulated curve reaches
/// target_sigma. Piecewise-linear interpolation in (log lambda, log sigma_x)
/// between the bracketing points; exact at tabulated points. Multiply by the
/// noise std at the call site. Throws RangeError outside the table range.
double lookup_lambda(const CalibrationTable& table, double target_sigma);

// ---------------------------------------------------------------------------
// Shrinkage behaviour on pure noise.
// ---------------------------------------------------------------------------

struct ShrinkageHistogram {
  /// Fraction of outputs with |x| <= zero_tolerance.
  double zero_mass = 0.0;
  double sigma_x = 0.0;
  /// bins + 1 edges of the histogram of the remaining (nonzero) outputs.
  std::vector<double> edges;
  /// Density of the nonzero outputs; integrates to 1 - zero_mass.
  std::vector<double> density;
};

inline constexpr double kZeroTolerance = 1e-10;

/// Applies OGS (soft thresholding for 1x1 groups, with T = lambda) to seeded
/// standard normal noise and summarizes the output distribution. For complex
/// data the histogram is taken over the real parts.
ShrinkageHistogram shrinkage_histogram(const GroupShape& group, Field field,
                                       double lambda, int iters,
                                       const Shape& sample_shape,
                                       std::uint64_t seed, std::size_t bins);

// ---------------------------------------------------------------------------
// Table files.
// ---------------------------------------------------------------------------

/// Header `# group=K1xK2 field=... iters=N samples=M seed=S rng=NAME`, then
/// `lambda,sigma_x` rows with 17 significant digits.
void write_table(std::ostream& out, const CalibrationTable& table);
void write_table(const std::filesystem::path& path,
                 const CalibrationTable& table);
CalibrationTable read_table(std::istream& in);
CalibrationTable read_table(const std::filesystem::path& path);

/// Directory of calibration tables named lambda_<field>_<K1>x<K2>_it<N>.csv.
class TableStore {
 public:
  explicit TableStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

  /// $OGS_TABLE_DIR if set, otherwise the tables shipped with the sources.
  static TableStore from_environment();

  static std::string file_name(const GroupShape& group, Field field, int iters);

  const std::filesystem::path& directory() const { return dir_; }

  /// Looks for the group in either orientation (K1xK2 and K2xK1 share a
  /// curve).
  std::optional<CalibrationTable> find(const GroupShape& group, Field field,
                                       int iters) const;

  /// Like find() but throws MissingTableError naming the calibrate command.
  CalibrationTable require(const GroupShape& group, Field field,
                           int iters) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace ogs
