#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ogs/tensor.hpp"

namespace ogs {

/// Framing parameters. The window is rescaled so that its squared shifts by
/// `hop` sum to one, which makes analysis followed by synthesis with the same
/// window a Parseval tight frame.
struct StftConfig {
  std::size_t frame_len = 512;
  std::size_t hop = 256;
  /// "sqrt-hann", "hann" or "rect".
  std::string window = "sqrt-hann";
  double sample_rate = 16000.0;

  /// Throws ValidationError unless hop divides frame_len and the squared
  /// window overlap-adds to a constant.
  void validate() const;
  /// Normalized analysis/synthesis window.
  std::vector<double> window_samples() const;
  std::size_t bins() const { return frame_len / 2 + 1; }
  /// Std of the coefficients (interior bins) produced by unit-variance white
  /// noise: sqrt(2 * sum(w^2) / frame_len). Equals 1 for the default setup.
  double noise_scale() const;
};

/// One-sided STFT coefficients, frequency bins x frames. Interior bins carry
/// a sqrt(2) weight so that the stored coefficients alone satisfy Parseval:
/// sum |c|^2 == ||s||^2.
struct StftFrameGrid {
  ComplexTensor coeffs;
  StftConfig config;
  std::size_t original_length = 0;

  std::size_t bins() const { return coeffs.rows(); }
  std::size_t frames() const { return coeffs.cols(); }
};

/// Number of frames used for a signal of the given length.
std::size_t stft_frame_count(std::size_t length, const StftConfig& config);

/// Analysis. The signal is zero padded by frame_len - hop samples at both
/// ends so every sample is covered by a full set of overlapping frames.
StftFrameGrid stft_forward(const RealTensor& signal, const StftConfig& config);

/// Synthesis (the adjoint of stft_forward); exact inverse on its range.
RealTensor stft_inverse(const StftFrameGrid& grid);

}  // namespace ogs
