#include "ogs/speech.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "ogs/baselines.hpp"

namespace ogs {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_inputs(const RealTensor& noisy, double sigma_signal,
                  const SpeechOptions& options) {
  if (!(sigma_signal >= 0.0) || !std::isfinite(sigma_signal))
    throw ValidationError("noise std must be finite and >= 0");
  if (!(options.attenuation_target > 0.0 && options.attenuation_target < 1.0))
    throw ValidationError("attenuation target must lie in (0, 1)");
  if (options.iters < 1) throw ValidationError("iters must be >= 1");
  if (options.group.ndim != 2)
    throw ValidationError("speech groups are 2D (frequency x time)");
  options.group.validate();
  options.stft.validate();
  noisy.validate_finite("noisy signal");
}

// Coefficient-domain proximal step: min 0.5||v - x||^2 + lambda R(x).
ComplexTensor prox(const ComplexTensor& v, double lambda,
                   const SpeechOptions& options) {
  if (lambda == 0.0) return v;
  if (options.group.cardinality() == 1) return soft_threshold(v, lambda);
  OgsConfig cfg;
  cfg.lambda = lambda;
  cfg.group = options.group;
  cfg.max_iters = options.iters;
  // Same wrap-around groups as the calibration runs, so the noise sees the
  // attenuation it was calibrated for; with zero padding the DC rows and
  // first frame are under-shrunk and leak into the rest of the grid.
  cfg.boundary = Boundary::Periodic;
  return ogs_denoise(v, cfg).solution;
}

SpeechDiagnostics prepare(double sigma_signal, const SpeechOptions& options,
                          const TableStore& tables) {
  SpeechDiagnostics d;
  d.sigma_tf = sigma_signal * options.stft.noise_scale();
  d.lambda_scale = resolve_lambda_scale(options, tables, &d.lambda_source);
  d.lambda = d.lambda_scale * d.sigma_tf;
  return d;
}

}  // namespace

double resolve_lambda_scale(const SpeechOptions& options,
                            const TableStore& tables, std::string* source) {
  auto set = [&](std::string s) {
    if (source) *source = std::move(s);
  };
  if (options.lambda_scale) {
    if (!(*options.lambda_scale >= 0.0) || !std::isfinite(*options.lambda_scale))
      throw ValidationError("lambda scale must be finite and >= 0");
    set("override");
    return *options.lambda_scale;
  }
  if (options.group.cardinality() == 1) {
    set("analytic");
    return invert_soft_sigma(options.attenuation_target, Field::Complex);
  }
  const auto table = tables.require(options.group, Field::Complex, options.iters);
  set((tables.directory() /
       TableStore::file_name(table.group, Field::Complex, options.iters))
          .string());
  return lookup_lambda(table, options.attenuation_target);
}

SpeechResult speech_denoise_coeff(const RealTensor& noisy, double sigma_signal,
                                  const SpeechOptions& options,
                                  const TableStore& tables) {
  check_inputs(noisy, sigma_signal, options);
  const auto start = Clock::now();
  SpeechResult r;
  r.diagnostics = prepare(sigma_signal, options, tables);
  r.noisy_grid = stft_forward(noisy, options.stft);
  r.estimate_grid = r.noisy_grid;
  r.estimate_grid.coeffs = prox(r.noisy_grid.coeffs, r.diagnostics.lambda, options);
  r.signal = stft_inverse(r.estimate_grid);
  r.diagnostics.seconds = elapsed(start);
  return r;
}

SpeechResult speech_denoise_signal_domain(const RealTensor& noisy,
                                          double sigma_signal,
                                          const SpeechOptions& options,
                                          const TableStore& tables) {
  check_inputs(noisy, sigma_signal, options);
  if (options.outer_iters < 1) throw ValidationError("outer_iters must be >= 1");
  if (!(options.admm_mu > 0.0) || !std::isfinite(options.admm_mu))
    throw ValidationError("ADMM mu must be positive");
  const auto start = Clock::now();
  SpeechResult r;
  r.diagnostics = prepare(sigma_signal, options, tables);
  r.noisy_grid = stft_forward(noisy, options.stft);

  // Split x = u: the u-update solves (Phi Phi* + mu I) u = Phi s + mu v, which
  // the Parseval identity Phi* Phi = I reduces to a closed form.
  const double mu = options.admm_mu;
  StftFrameGrid x = r.noisy_grid;
  ComplexTensor d(x.coeffs.shape());
  StftFrameGrid v = x;
  for (int it = 0; it < options.outer_iters; ++it) {
    for (std::size_t i = 0; i < v.coeffs.size(); ++i)
      v.coeffs[i] = x.coeffs[i] - d[i];
    RealTensor resid = stft_inverse(v);
    for (std::size_t i = 0; i < resid.size(); ++i) resid[i] = noisy[i] - resid[i];
    const StftFrameGrid corr = stft_forward(resid, options.stft);
    ComplexTensor u(x.coeffs.shape());
    for (std::size_t i = 0; i < u.size(); ++i)
      u[i] = v.coeffs[i] + corr.coeffs[i] / (1.0 + mu);

    ComplexTensor w(u.shape());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = u[i] + d[i];
    x.coeffs = prox(w, r.diagnostics.lambda / mu, options);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += u[i] - x.coeffs[i];
  }
  r.estimate_grid = x;
  r.signal = stft_inverse(x);
  r.diagnostics.seconds = elapsed(start);
  return r;
}

StftFrameGrid empirical_wiener_post(const StftFrameGrid& noisy_grid,
                                    const StftFrameGrid& pilot_grid,
                                    double sigma_tf) {
  require_same_shape(noisy_grid.coeffs, pilot_grid.coeffs, "empirical_wiener_post");
  if (!(sigma_tf > 0.0) || !std::isfinite(sigma_tf))
    throw ValidationError("sigma_tf must be positive");
  const double s2 = sigma_tf * sigma_tf;
  StftFrameGrid out = noisy_grid;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
    const double p = abs2(pilot_grid.coeffs[i]);
    out.coeffs[i] = noisy_grid.coeffs[i] * (p / (p + s2));
  }
  return out;
}

double snr_db(const RealTensor& reference, const RealTensor& estimate) {
  require_same_shape(reference, estimate, "snr_db");
  const double ref = squared_norm(reference);
  if (!(ref > 0.0)) throw ValidationError("reference signal is all zeros");
  double err = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const double e = reference[i] - estimate[i];
    err += e * e;
  }
  if (err == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(ref / err);
}

}  // namespace ogs
