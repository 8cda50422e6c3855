#pragma once

#include <optional>
#include <string>

#include "ogs/calibration.hpp"
#include "ogs/solver.hpp"
#include "ogs/stft.hpp"

namespace ogs {

struct SpeechOptions {
  /// Frequency bins x time frames.
  GroupShape group = GroupShape::mat(8, 2);
  /// Fraction of the coefficient-domain noise std left after denoising.
  double attenuation_target = 1e-3;
  StftConfig stft;
  /// OGS iterations per solve; also selects the calibration table.
  int iters = 25;
  /// If set, lambda = lambda_scale * sigma_tf and no table is consulted.
  std::optional<double> lambda_scale;
  /// Signal-domain formulation only.
  int outer_iters = 25;
  double admm_mu = 1.0;
};

struct SpeechDiagnostics {
  double lambda = 0.0;
  double lambda_scale = 0.0;
  /// Std of the noise in the STFT domain.
  double sigma_tf = 0.0;
  /// "analytic", "override" or the table file consulted.
  std::string lambda_source;
  double seconds = 0.0;
};

struct SpeechResult {
  RealTensor signal;
  StftFrameGrid noisy_grid;
  StftFrameGrid estimate_grid;
  SpeechDiagnostics diagnostics;
};

/// lambda / sigma_tf for the options: the override, the closed form for 1x1
/// groups, or a lookup in the complex table for (group, iters).
double resolve_lambda_scale(const SpeechOptions& options,
                            const TableStore& tables, std::string* source = nullptr);

/// OGS on the STFT coefficients of the noisy signal (1x1 groups reduce to
/// soft thresholding of the coefficient magnitudes).
SpeechResult speech_denoise_coeff(const RealTensor& noisy, double sigma_signal,
                                  const SpeechOptions& options,
                                  const TableStore& tables);

/// Minimizes 0.5||s - Phi* x||^2 + lambda R(x) over coefficients x by ADMM,
/// with OGS as the proximal step.
SpeechResult speech_denoise_signal_domain(const RealTensor& noisy,
                                          double sigma_signal,
                                          const SpeechOptions& options,
                                          const TableStore& tables);

/// Per coefficient gain |pilot|^2 / (|pilot|^2 + sigma_tf^2) applied to the
/// noisy coefficient.
StftFrameGrid empirical_wiener_post(const StftFrameGrid& noisy_grid,
                                    const StftFrameGrid& pilot_grid,
                                    double sigma_tf);

/// 10 log10(||ref||^2 / ||ref - est||^2); +infinity when the error is zero.
double snr_db(const RealTensor& reference, const RealTensor& estimate);

}  // namespace ogs
