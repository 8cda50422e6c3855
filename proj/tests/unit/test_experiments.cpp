#include <doctest.h>

#include <algorithm>

#include "ogs/experiments.hpp"

using namespace ogs;
using namespace ogs::experiments;

TEST_SUITE("experiments") {
  TEST_CASE("generator is deterministic and seed dependent") {
    CHECK(group_sparse_signal(5) == group_sparse_signal(5));
    CHECK(!(group_sparse_signal(5) == group_sparse_signal(6)));
    CHECK(gaussian_noise(100, 1.0, 5) == gaussian_noise(100, 1.0, 5));
  }

  TEST_CASE("generator layout") {
    const GroupSparseSpec spec;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      const auto layout = group_sparse_layout(seed, spec);
      REQUIRE(layout.starts.size() == spec.groups);
      auto starts = layout.starts;
      std::sort(starts.begin(), starts.end());
      for (std::size_t g = 0; g < starts.size(); ++g) {
        CHECK(starts[g] + spec.group_len + spec.shift_margin <= spec.length);
        // runs are separated by at least one zero
        if (g > 0) CHECK(starts[g] > starts[g - 1] + spec.group_len);
      }
      const auto x = layout.render();
      CHECK(max_abs(x) == doctest::Approx(spec.peak).epsilon(1e-15));
      std::size_t nonzero = 0;
      for (double v : x.values()) {
        if (v != 0.0) {
          ++nonzero;
          CHECK(std::abs(v) >= spec.peak / 4.0 - 1e-12);
        }
      }
      CHECK(nonzero == spec.groups * spec.group_len);
      const auto shifted = layout.render(spec.shift_margin);
      for (std::size_t i = 0; i + spec.shift_margin < spec.length; ++i)
        CHECK(shifted[i + spec.shift_margin] == x[i]);
    }
  }

  TEST_CASE("noise statistics") {
    const auto w = gaussian_noise(200000, 2.0, 3);
    double s = 0.0, s2 = 0.0;
    for (double v : w.values()) {
      s += v;
      s2 += v * v;
    }
    CHECK(s / 200000 == doctest::Approx(0.0).epsilon(0.02).scale(1.0));
    CHECK(std::sqrt(s2 / 200000) == doctest::Approx(2.0).epsilon(0.01));
  }

  TEST_CASE("demo with no noise recovers the signal") {
    const auto r = run_demo(0.0, 4);
    CHECK(r.rmse_noisy == 0.0);
    CHECK(r.rmse_soft == 0.0);
    CHECK(r.rmse_ogs == 0.0);
  }

  TEST_CASE("demo: OGS beats soft thresholding") {
    const auto r = run_demo(1.0, 1);
    CHECK(r.lambda == doctest::Approx(0.68));
    CHECK(r.threshold == doctest::Approx(3.0));
    CHECK(r.rmse_ogs < r.rmse_soft);
    CHECK(r.rmse_ogs < r.rmse_noisy);
  }

  TEST_CASE("compare histories") {
    CompareOptions opt;
    opt.iters = 60;
    const auto r = run_compare(opt);
    REQUIRE(r.ogs_cost.size() == 60);
    REQUIRE(r.admm_cost.size() == 60);
    for (std::size_t i = 1; i < r.ogs_cost.size(); ++i)
      CHECK(r.ogs_cost[i] <= r.ogs_cost[i - 1] * (1 + 1e-12));
  }

  TEST_CASE("partial overlap smoke run is thread independent") {
    PartialOptions opt;
    opt.trials = 3;
    opt.sigmas = {1.0};
    opt.lambda_points = 8;
    opt.threads = 1;
    const auto a = run_partial(opt);
    opt.threads = 3;
    const auto b = run_partial(opt);
    CHECK(a.mean_rmse == b.mean_rmse);
    REQUIRE(a.mean_rmse.size() == 1);
    REQUIRE(a.mean_rmse[0].size() == 5);
    CHECK_THROWS_AS(run_partial(PartialOptions{.overlaps = {5}}), ValidationError);
  }
}
