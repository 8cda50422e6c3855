#include <doctest.h>

#include <random>

#include "ogs/baselines.hpp"
#include "oracles.hpp"

using namespace ogs;
using doctest::Approx;

TEST_SUITE("baselines") {
  TEST_CASE("soft threshold examples") {
    const auto r = soft_threshold(RealTensor::vec({2.0, -1.0, -4.0, 0.0}), 1.5);
    CHECK(r[0] == Approx(0.5));
    CHECK(r[1] == 0.0);
    CHECK(r[2] == Approx(-2.5));
    CHECK(r[3] == 0.0);
    const auto c = soft_threshold(ComplexTensor::vec({Complex(3, 4)}), 2.5);
    CHECK(c[0].real() == Approx(1.5));
    CHECK(c[0].imag() == Approx(2.0));
    CHECK_THROWS_AS(soft_threshold(r, -1.0), ValidationError);
  }

  TEST_CASE("multivariate soft threshold") {
    const std::vector<double> y{3.0, 4.0};
    const auto x = multivariate_soft<double>(y, 2.5);
    CHECK(x[0] == Approx(1.5));
    CHECK(x[1] == Approx(2.0));
    for (double v : multivariate_soft<double>(y, 5.0)) CHECK(v == 0.0);
    for (double v : multivariate_soft<double>(std::vector<double>{0.0, 0.0}, 1.0)) CHECK(v == 0.0);
    CHECK(multivariate_soft<double>(std::vector<double>{-2.0}, 1.5)[0] == Approx(-0.5));
  }

  TEST_CASE("multivariate soft is the exact group prox") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n;
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> y(4);
      for (double& v : y) v = n(rng);
      const double lambda = 0.3 + 0.05 * trial;
      const auto x = multivariate_soft<double>(y, lambda);
      auto f = [&](const std::vector<double>& z) {
        double fit = 0.0, nz = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) {
          fit += (y[i] - z[i]) * (y[i] - z[i]);
          nz += z[i] * z[i];
        }
        return 0.5 * fit + lambda * std::sqrt(nz);
      };
      const double best = f(x);
      for (int p = 0; p < 30; ++p) {
        auto z = x;
        for (double& v : z) v += 1e-3 * n(rng);
        CHECK(f(z) >= best - 1e-12);
      }
    }
  }

  TEST_CASE("ADMM config validation and trivial inputs") {
    AdmmConfig c;
    c.rho = 0.0;
    CHECK_THROWS_AS(admm_overlapping_prox(RealTensor::vec({1.0}), c), ValidationError);
    c = AdmmConfig{};
    c.group = GroupShape::vec(3);
    c.lambda = 0.5;
    const auto z = admm_overlapping_prox(RealTensor(Shape::vec(10)), c);
    CHECK(squared_norm(z.solution) == 0.0);
  }

  TEST_CASE("ADMM with K=1 converges to soft thresholding") {
    const auto y = oracle::random_complex(Shape::vec(40), 7);
    AdmmConfig c;
    c.lambda = 0.8;
    c.iters = 300;
    const auto r = admm_overlapping_prox(y, c);
    CHECK(oracle::max_diff(r.solution, soft_threshold(y, 0.8)) < 1e-8);
  }

  TEST_CASE("ADMM agrees with OGS on a seeded instance") {
    const auto y = oracle::random_real(Shape::vec(50), 50);
    AdmmConfig a;
    a.lambda = 0.5;
    a.group = GroupShape::vec(3);
    a.iters = 2000;
    const auto admm = admm_overlapping_prox(y, a);
    OgsConfig o;
    o.lambda = 0.5;
    o.group = a.group;
    o.max_iters = 20000;
    o.rel_change_tol = 1e-15;
    const auto ogs = ogs_denoise(y, o);
    const double fa = admm.cost_history.back(), fo = ogs.cost_history.back();
    CHECK(std::abs(fa - fo) <= 1e-10 * fo);
    CHECK(oracle::max_diff(admm.solution, ogs.solution) < 1e-4);
    CHECK(fa == Approx(oracle::cost(y, admm.solution, 0.5, 1, 3)).epsilon(1e-12));

    // Tail of the history is flat.
    const auto& h = admm.cost_history;
    for (std::size_t k = h.size() * 9 / 10; k < h.size(); ++k)
      CHECK(std::abs(h[k] - h.back()) <= 1e-8 * h.back());
  }

  TEST_CASE("ADMM handles 2D complex groups") {
    const auto y = oracle::random_complex(Shape::mat(6, 7), 8);
    AdmmConfig a;
    a.lambda = 0.4;
    a.group = GroupShape::mat(2, 3);
    a.iters = 3000;
    OgsConfig o;
    o.lambda = 0.4;
    o.group = a.group;
    o.max_iters = 20000;
    o.rel_change_tol = 1e-15;
    const auto fa = admm_overlapping_prox(y, a).cost_history.back();
    const auto fo = ogs_denoise(y, o).cost_history.back();
    CHECK(std::abs(fa - fo) <= 1e-8 * fo);
  }
}
