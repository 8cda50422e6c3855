// ogs: overlapping group shrinkage denoising, calibration and experiments.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>

#include "ogs/baselines.hpp"
#include "ogs/calibration.hpp"
#include "ogs/csv_io.hpp"
#include "ogs/experiments.hpp"
#include "ogs/solver.hpp"
#include "ogs/speech.hpp"
#include "ogs/wav.hpp"

namespace fs = std::filesystem;
using namespace ogs;

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  return out;
}

// ---------------------------------------------------------------- denoise

struct DenoiseArgs {
  std::string input, output, reference;
  std::string group = "3";
  std::string field = "real";
  double lambda = 1.0;
  int iters = 25;
  int dim = 1;
  double tol = 0.0;
  double epsilon = 0.0;
  bool soft = false;
};

template <class T>
int denoise_typed(const DenoiseArgs& a, const Tensor<T>& y) {
  Tensor<T> x;
  if (a.soft) {
    x = soft_threshold(y, a.lambda);
  } else {
    OgsConfig cfg;
    cfg.lambda = a.lambda;
    cfg.group = GroupShape::parse(a.group);
    cfg.max_iters = a.iters;
    cfg.rel_change_tol = a.tol;
    cfg.epsilon = a.epsilon;
    cfg.group.validate_for(y.shape());
    auto result = ogs_denoise(y, cfg);
    x = std::move(result.solution);
    auto cost = open_out(a.output + ".cost.csv");
    cost << "iteration,cost\n";
    for (std::size_t i = 0; i < result.cost_history.size(); ++i)
      cost << i + 1 << ',' << result.cost_history[i] << '\n';
    std::cout << "iterations: " << result.iterations_run
              << "\nactive: " << result.active_count_final << '\n';
    if (!result.cost_history.empty())
      std::cout << "final cost: " << result.cost_history.back() << '\n';
  }
  write_csv_tensor(fs::path(a.output), x);
  if (!a.reference.empty()) {
    const auto ref = std::get<Tensor<T>>(
        read_csv_tensor(fs::path(a.reference), field_of<T>(), a.dim));
    require_same_shape(ref, x, "reference");
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += abs2(x[i] - ref[i]);
    std::cout << "rmse: " << std::sqrt(acc / static_cast<double>(x.size())) << '\n';
  }
  return 0;
}

int run_denoise(const DenoiseArgs& a) {
  const Field field = parse_field(a.field);
  const auto y = read_csv_tensor(fs::path(a.input), field, a.dim);
  return std::visit([&](const auto& t) { return denoise_typed(a, t); }, y);
}

// -------------------------------------------------------------- calibrate

struct CalibrateArgs {
  std::string group = "3x3";
  std::string field = "real";
  std::string output;
  int iters = 25;
  std::vector<double> targets;
  std::size_t samples = 0;
  std::uint64_t seed = 1;
  double lambda_min = 0.01;
  double lambda_max = 8.0;
  std::size_t points = 100;
  unsigned threads = 0;
};

int run_calibrate(const CalibrateArgs& a) {
  const Field field = parse_field(a.field);
  const GroupShape group = GroupShape::parse(a.group);
  group.validate();
  const auto grid = log_lambda_grid(a.lambda_min, a.lambda_max, a.points);
  CalibrationTable table;
  if (group.cardinality() == 1) {
    table = analytic_soft_table(field, grid);
    table.iters = a.iters;
  } else {
    Shape shape = default_sample_shape(group);
    if (a.samples > 0) {
      if (group.ndim == 2) {
        const auto side = static_cast<std::size_t>(
            std::llround(std::sqrt(static_cast<double>(a.samples))));
        shape = Shape::mat(side, side);
      } else {
        shape = Shape::vec(a.samples);
      }
    }
    SimulationOptions opts;
    opts.threads = a.threads;
    table = simulate_sigma_curve(group, field, a.iters, grid, shape, a.seed, opts);
  }
  if (!a.output.empty()) {
    write_table(fs::path(a.output), table);
    std::cout << "wrote " << a.output << '\n';
  }
  std::cout << std::setprecision(6);
  for (double t : a.targets) {
    const double lambda = group.cardinality() == 1 ? invert_soft_sigma(t, field)
                                                   : lookup_lambda(table, t);
    std::cout << "sigma_x=" << t << " lambda=" << lambda << '\n';
  }
  return 0;
}

// ------------------------------------------------------------ denoise-wav

struct WavArgs {
  std::string input, output, reference, table_dir;
  std::string group = "8x2";
  std::string formulation = "coeff";
  std::string window = "sqrt-hann";
  double sigma = 0.0;
  double target = 1e-3;
  std::optional<double> lambda_scale;
  int iters = 25;
  int outer_iters = 25;
  std::size_t frame = 512;
  std::size_t hop = 256;
  bool ewp = false;
};

int run_denoise_wav(const WavArgs& a) {
  const WavData wav = read_wav(a.input);
  SpeechOptions opts;
  opts.group = GroupShape::parse(a.group);
  if (opts.group.ndim == 1) opts.group = GroupShape::mat(opts.group.cols, 1);
  opts.attenuation_target = a.target;
  opts.iters = a.iters;
  opts.outer_iters = a.outer_iters;
  opts.lambda_scale = a.lambda_scale;
  opts.stft.frame_len = a.frame;
  opts.stft.hop = a.hop;
  opts.stft.window = a.window;
  opts.stft.sample_rate = wav.sample_rate;
  if (a.sigma == 0.0) opts.lambda_scale = 0.0;
  const TableStore tables =
      a.table_dir.empty() ? TableStore::from_environment() : TableStore(a.table_dir);

  SpeechResult r;
  if (a.formulation == "coeff")
    r = speech_denoise_coeff(wav.samples, a.sigma, opts, tables);
  else if (a.formulation == "signal")
    r = speech_denoise_signal_domain(wav.samples, a.sigma, opts, tables);
  else
    throw ValidationError("--formulation must be coeff or signal");

  RealTensor out = r.signal;
  if (a.ewp) {
    if (r.diagnostics.sigma_tf > 0.0)
      out = stft_inverse(
          empirical_wiener_post(r.noisy_grid, r.estimate_grid, r.diagnostics.sigma_tf));
    else
      std::cerr << "note: --ewp ignored for sigma 0\n";
  }
  write_wav(a.output, WavData{out, wav.sample_rate});

  const auto& d = r.diagnostics;
  std::cout << std::setprecision(6) << "lambda: " << d.lambda << " (" << d.lambda_scale
            << " * sigma_tf, from " << d.lambda_source << ")\n"
            << "sigma_tf: " << d.sigma_tf << "\nseconds: " << d.seconds << '\n';
  if (!a.reference.empty()) {
    const WavData ref = read_wav(a.reference);
    const auto show = [](double snr) {
      return std::isinf(snr) ? std::string("inf") : std::to_string(snr);
    };
    std::cout << "input snr_db: " << show(snr_db(ref.samples, wav.samples))
              << "\noutput snr_db: " << show(snr_db(ref.samples, r.signal)) << '\n';
    if (a.ewp) std::cout << "ewp snr_db: " << show(snr_db(ref.samples, out)) << '\n';
  }
  return 0;
}

// ------------------------------------------------------------ experiments

int run_compare(const experiments::CompareOptions& o, const std::string& output) {
  const auto r = experiments::run_compare(o);
  auto out = open_out(output);
  out << "iteration,ogs,admm\n";
  for (std::size_t i = 0; i < r.ogs_cost.size(); ++i)
    out << i + 1 << ',' << r.ogs_cost[i] << ',' << r.admm_cost[i] << '\n';
  const std::size_t at = std::min<std::size_t>(25, r.ogs_cost.size()) - 1;
  std::cout << "cost at iteration " << at + 1 << ": ogs " << r.ogs_cost[at]
            << ", admm " << r.admm_cost[at] << '\n'
            << "final cost: ogs " << r.ogs_cost.back() << ", admm "
            << r.admm_cost.back() << '\n';
  return 0;
}

int run_demo(double sigma, std::uint64_t seed, std::size_t count,
             const std::string& dir) {
  fs::create_directories(dir);
  auto summary = open_out(fs::path(dir) / "summary.csv");
  summary << "seed,rmse_noisy,rmse_soft,rmse_ogs\n";
  double soft = 0.0, ogs = 0.0;
  for (std::size_t c = 0; c < count; ++c) {
    const auto r = experiments::run_demo(sigma, seed + c);
    if (c == 0) {
      write_csv_tensor(fs::path(dir) / "clean.csv", r.clean);
      write_csv_tensor(fs::path(dir) / "noisy.csv", r.noisy);
      write_csv_tensor(fs::path(dir) / "soft.csv", r.soft);
      write_csv_tensor(fs::path(dir) / "ogs.csv", r.ogs);
    }
    summary << seed + c << ',' << r.rmse_noisy << ',' << r.rmse_soft << ','
            << r.rmse_ogs << '\n';
    soft += r.rmse_soft;
    ogs += r.rmse_ogs;
  }
  std::cout << std::setprecision(4) << "mean rmse: soft " << soft / count
            << ", ogs " << ogs / count << '\n';
  return 0;
}

int run_partial(const experiments::PartialOptions& o, const std::string& output) {
  const auto r = experiments::run_partial(o);
  auto out = open_out(output);
  out << "sigma";
  for (auto m : r.overlaps) out << ",M" << m;
  out << '\n';
  std::cout << std::setprecision(4);
  for (std::size_t s = 0; s < r.sigmas.size(); ++s) {
    out << r.sigmas[s];
    std::cout << "sigma " << r.sigmas[s] << ':';
    for (double v : r.mean_rmse[s]) {
      out << ',' << v;
      std::cout << ' ' << v;
    }
    out << '\n';
    std::cout << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Overlapping group shrinkage denoising"};
  app.require_subcommand(1);

  DenoiseArgs dn;
  auto* denoise = app.add_subcommand("denoise", "Denoise a CSV signal with OGS");
  denoise->add_option("input", dn.input, "Input CSV")->required();
  denoise->add_option("output", dn.output, "Output CSV")->required();
  denoise->add_option("--lambda", dn.lambda, "Regularization weight")->required();
  denoise->add_option("--group", dn.group, "Group size K or K1xK2");
  denoise->add_option("--iters", dn.iters, "Iterations")->capture_default_str();
  denoise->add_option("--dim", dn.dim)->check(CLI::IsMember({1, 2}))->capture_default_str();
  denoise->add_option("--field", dn.field)->check(CLI::IsMember({"real", "complex"}))->capture_default_str();
  denoise->add_option("--tol", dn.tol, "Stop when the relative change falls below this");
  denoise->add_option("--epsilon", dn.epsilon, "Smoothed penalty sqrt(g + epsilon)");
  denoise->add_flag("--soft", dn.soft, "Soft threshold with T = lambda instead");
  denoise->add_option("--reference", dn.reference, "Clean CSV; prints the RMSE");

  CalibrateArgs cal;
  auto* calibrate = app.add_subcommand("calibrate", "Tabulate sigma_x(lambda) on noise");
  calibrate->add_option("--group", cal.group)->capture_default_str();
  calibrate->add_option("--field", cal.field)->check(CLI::IsMember({"real", "complex"}))->capture_default_str();
  calibrate->add_option("--iters", cal.iters)->capture_default_str();
  calibrate->add_option("--targets", cal.targets, "Print lambda for these sigma_x")->delimiter(',');
  calibrate->add_option("--samples", cal.samples, "Noise samples (default 10^6)");
  calibrate->add_option("--seed", cal.seed)->capture_default_str();
  calibrate->add_option("--lambda-min", cal.lambda_min)->capture_default_str();
  calibrate->add_option("--lambda-max", cal.lambda_max)->capture_default_str();
  calibrate->add_option("--points", cal.points)->capture_default_str();
  calibrate->add_option("--threads", cal.threads, "0 = all cores");
  calibrate->add_option("--output", cal.output, "Table file");

  WavArgs wv;
  auto* wavcmd = app.add_subcommand("denoise-wav", "Denoise a mono 16-bit WAV file");
  wavcmd->add_option("input", wv.input)->required();
  wavcmd->add_option("output", wv.output)->required();
  wavcmd->add_option("--sigma", wv.sigma, "Noise std in the signal domain")->required();
  wavcmd->add_option("--target", wv.target, "Noise attenuation target sigma_x")->capture_default_str();
  wavcmd->add_option("--lambda-scale", wv.lambda_scale, "Use lambda = scale * sigma, skip the table");
  wavcmd->add_option("--group", wv.group, "Frequency x time bins")->capture_default_str();
  wavcmd->add_option("--iters", wv.iters)->capture_default_str();
  wavcmd->add_option("--outer-iters", wv.outer_iters)->capture_default_str();
  wavcmd->add_option("--formulation", wv.formulation)->check(CLI::IsMember({"coeff", "signal"}))->capture_default_str();
  wavcmd->add_flag("--ewp", wv.ewp, "Empirical Wiener post-processing");
  wavcmd->add_option("--reference", wv.reference, "Clean WAV; prints SNRs");
  wavcmd->add_option("--table-dir", wv.table_dir, "Calibration table directory");
  wavcmd->add_option("--frame", wv.frame)->capture_default_str();
  wavcmd->add_option("--hop", wv.hop)->capture_default_str();
  wavcmd->add_option("--window", wv.window)->capture_default_str();

  experiments::CompareOptions cmp;
  std::string cmp_out;
  auto* compare = app.add_subcommand("compare", "Cost histories of OGS and ADMM");
  compare->add_option("output", cmp_out)->required();
  compare->add_option("--n", cmp.n)->capture_default_str();
  compare->add_option("--k", cmp.k)->capture_default_str();
  compare->add_option("--lambda", cmp.lambda)->capture_default_str();
  compare->add_option("--sigma", cmp.sigma)->capture_default_str();
  compare->add_option("--iters", cmp.iters)->capture_default_str();
  compare->add_option("--seed", cmp.seed)->capture_default_str();
  compare->add_option("--rho", cmp.rho)->capture_default_str();

  double demo_sigma = 0.5;
  std::uint64_t demo_seed = 1;
  std::size_t demo_count = 1;
  std::string demo_dir;
  auto* demo = app.add_subcommand("demo", "Soft thresholding vs OGS on a synthetic signal");
  demo->add_option("output", demo_dir, "Output directory")->required();
  demo->add_option("--sigma", demo_sigma)->capture_default_str();
  demo->add_option("--seed", demo_seed)->capture_default_str();
  demo->add_option("--count", demo_count, "Number of consecutive seeds")->capture_default_str();

  experiments::PartialOptions part;
  std::string part_out;
  auto* partial = app.add_subcommand("partial", "Best RMSE versus group overlap");
  partial->add_option("output", part_out)->required();
  partial->add_option("--k", part.k)->capture_default_str();
  partial->add_option("--overlaps", part.overlaps)->delimiter(',');
  partial->add_option("--sigma", part.sigmas)->delimiter(',');
  partial->add_option("--seeds", part.trials, "Number of random signals")->capture_default_str();
  partial->add_option("--seed", part.seed, "First seed")->capture_default_str();
  partial->add_option("--lambda-points", part.lambda_points)->capture_default_str();
  partial->add_option("--iters", part.iters)->capture_default_str();
  partial->add_option("--threads", part.threads, "0 = all cores");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*denoise) return run_denoise(dn);
    if (*calibrate) return run_calibrate(cal);
    if (*wavcmd) return run_denoise_wav(wv);
    if (*compare) return run_compare(cmp, cmp_out);
    if (*demo) return run_demo(demo_sigma, demo_seed, demo_count, demo_dir);
    if (*partial) {
      if (partial->count("--overlaps") == 0) {
        part.overlaps.clear();
        for (std::size_t m = 0; m < part.k; ++m) part.overlaps.push_back(m);
      }
      return run_partial(part, part_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
