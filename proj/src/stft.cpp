#include "ogs/stft.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

namespace ogs {

namespace {

// The FFTW planner is not thread safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

class RealFft {
 public:
  explicit RealFft(std::size_t n)
      : n_(n),
        real_(static_cast<double*>(fftw_malloc(sizeof(double) * n))),
        spec_(static_cast<fftw_complex*>(
            fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1)))) {
    std::lock_guard lock(planner_mutex());
    const int len = static_cast<int>(n);
    forward_ = fftw_plan_dft_r2c_1d(len, real_.get(), spec_.get(), FFTW_ESTIMATE);
    inverse_ = fftw_plan_dft_c2r_1d(len, spec_.get(), real_.get(), FFTW_ESTIMATE);
  }
  ~RealFft() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(inverse_);
  }
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  double* real() { return real_.get(); }
  Complex* spectrum() { return reinterpret_cast<Complex*>(spec_.get()); }
  void forward() { fftw_execute(forward_); }
  /// Unnormalized; overwrites the spectrum buffer.
  void inverse() { fftw_execute(inverse_); }
  std::size_t size() const { return n_; }

 private:
  std::size_t n_;
  std::unique_ptr<double, FftwFree> real_;
  std::unique_ptr<fftw_complex, FftwFree> spec_;
  fftw_plan forward_{};
  fftw_plan inverse_{};
};

std::vector<double> raw_window(const std::string& name, std::size_t n) {
  std::vector<double> w(n);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < n; ++i) {
    const double hann =
        0.5 * (1.0 - std::cos(two_pi * static_cast<double>(i) / static_cast<double>(n)));
    if (name == "sqrt-hann")
      w[i] = std::sqrt(hann);
    else if (name == "hann")
      w[i] = hann;
    else if (name == "rect")
      w[i] = 1.0;
    else
      throw ValidationError("unknown window '" + name +
                            "' (expected sqrt-hann, hann or rect)");
  }
  return w;
}

// Per-sample sums of the squared window over all frames covering it.
std::vector<double> overlap_energy(const std::vector<double>& w, std::size_t hop) {
  std::vector<double> c(hop, 0.0);
  for (std::size_t i = 0; i < w.size(); ++i) c[i % hop] += w[i] * w[i];
  return c;
}

// sqrt(2) weight on bins that stand for a conjugate pair.
double bin_weight(std::size_t k, std::size_t n) {
  return (k == 0 || 2 * k == n) ? 1.0 : std::numbers::sqrt2;
}

}  // namespace

void StftConfig::validate() const {
  if (frame_len < 2) throw ValidationError("frame_len must be >= 2");
  if (hop == 0 || hop > frame_len || frame_len % hop != 0)
    throw ValidationError("hop must divide frame_len");
  if (!(sample_rate > 0.0)) throw ValidationError("sample_rate must be positive");
  const auto c = overlap_energy(raw_window(window, frame_len), hop);
  double lo = c[0], hi = c[0];
  for (double v : c) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(lo > 0.0) || hi - lo > 1e-10 * hi)
    throw ValidationError("window '" + window + "' with hop " +
                          std::to_string(hop) +
                          " does not overlap-add to a constant; the STFT "
                          "would not be a tight frame");
}

std::vector<double> StftConfig::window_samples() const {
  validate();
  auto w = raw_window(window, frame_len);
  const auto c = overlap_energy(w, hop);
  double mean = 0.0;
  for (double v : c) mean += v;
  mean /= static_cast<double>(c.size());
  const double scale = 1.0 / std::sqrt(mean);
  for (double& v : w) v *= scale;
  return w;
}

double StftConfig::noise_scale() const {
  double e = 0.0;
  for (double v : window_samples()) e += v * v;
  return std::sqrt(2.0 * e / static_cast<double>(frame_len));
}

std::size_t stft_frame_count(std::size_t length, const StftConfig& config) {
  const std::size_t pad = config.frame_len - config.hop;
  const std::size_t needed = length + 2 * pad;
  if (needed <= config.frame_len) return 1;
  return (needed - config.frame_len + config.hop - 1) / config.hop + 1;
}

StftFrameGrid stft_forward(const RealTensor& signal, const StftConfig& config) {
  const auto w = config.window_samples();
  if (signal.shape().ndim != 1) throw ValidationError("STFT input must be 1D");
  signal.validate_finite("STFT input");
  const std::size_t n = signal.size();
  const std::size_t L = config.frame_len, H = config.hop;
  if (n < L)
    throw ValidationError("signal of " + std::to_string(n) +
                          " samples is shorter than one frame (" +
                          std::to_string(L) + ")");
  const std::size_t frames = stft_frame_count(n, config);
  const std::size_t pad = L - H;
  const std::size_t bins = config.bins();
  const double norm = 1.0 / std::sqrt(static_cast<double>(L));

  StftFrameGrid grid{ComplexTensor(Shape::mat(bins, frames)), config, n};
  RealFft fft(L);
  for (std::size_t f = 0; f < frames; ++f) {
    for (std::size_t i = 0; i < L; ++i) {
      const long pos = static_cast<long>(f * H + i) - static_cast<long>(pad);
      const double s = (pos >= 0 && pos < static_cast<long>(n))
                           ? signal[static_cast<std::size_t>(pos)]
                           : 0.0;
      fft.real()[i] = w[i] * s;
    }
    fft.forward();
    for (std::size_t k = 0; k < bins; ++k)
      grid.coeffs(k, f) = fft.spectrum()[k] * (norm * bin_weight(k, L));
  }
  return grid;
}

RealTensor stft_inverse(const StftFrameGrid& grid) {
  const auto& config = grid.config;
  const auto w = config.window_samples();
  const std::size_t L = config.frame_len, H = config.hop;
  const std::size_t n = grid.original_length;
  if (grid.coeffs.shape().ndim != 2 || grid.bins() != config.bins() ||
      grid.frames() != stft_frame_count(n, config) || n < L)
    throw ValidationError("STFT grid shape is inconsistent with its config");
  const std::size_t pad = L - H;
  const double norm = 1.0 / std::sqrt(static_cast<double>(L));

  RealTensor out(Shape::vec(n));
  RealFft fft(L);
  for (std::size_t f = 0; f < grid.frames(); ++f) {
    for (std::size_t k = 0; k < grid.bins(); ++k)
      fft.spectrum()[k] = grid.coeffs(k, f) / bin_weight(k, L);
    fft.inverse();
    for (std::size_t i = 0; i < L; ++i) {
      const long pos = static_cast<long>(f * H + i) - static_cast<long>(pad);
      if (pos >= 0 && pos < static_cast<long>(n))
        out[static_cast<std::size_t>(pos)] += w[i] * fft.real()[i] * norm;
    }
  }
  return out;
}

}  // namespace ogs
