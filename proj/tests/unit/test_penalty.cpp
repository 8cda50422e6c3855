#include <doctest.h>

#include <random>

#include "ogs/penalty.hpp"
#include "oracles.hpp"

using namespace ogs;
using doctest::Approx;

TEST_SUITE("penalty") {
  TEST_CASE("zero signal has zero penalty") {
    CHECK(penalty(RealTensor(Shape::vec(10)), GroupShape::vec(3)) == 0.0);
  }

  TEST_CASE("K=1 penalty is the l1 norm") {
    const auto x = oracle::random_real(Shape::vec(40), 3);
    double l1 = 0.0;
    for (double v : x.values()) l1 += std::abs(v);
    CHECK(penalty(x, GroupShape::vec(1)) == Approx(l1).epsilon(1e-14));
  }

  TEST_CASE("an interior impulse lies in K windows") {
    RealTensor x(Shape::vec(20));
    x[10] = 2.5;
    CHECK(penalty(x, GroupShape::vec(4)) == Approx(4 * 2.5).epsilon(1e-15));
    RealTensor m(Shape::mat(9, 9));
    m(4, 4) = 1.0;
    CHECK(penalty(m, GroupShape::mat(3, 2)) == Approx(6.0).epsilon(1e-15));
  }

  TEST_CASE("matches the brute-force oracle on 1D, 2D, real and complex data") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const std::size_t k1 = 1 + seed % 3, k2 = 1 + (seed * 7) % 5;
      const auto r = oracle::random_real(Shape::mat(7 + seed % 4, 9), seed, 0.3);
      const auto c = oracle::random_complex(Shape::mat(6, 5 + seed % 3), seed, 0.3);
      const auto v = oracle::random_real(Shape::vec(13 + seed), seed);
      const auto g = GroupShape::mat(k1, k2);
      CHECK(penalty(r, g) == Approx(oracle::penalty(r, k1, k2)).epsilon(1e-13));
      CHECK(penalty(c, g) == Approx(oracle::penalty(c, k1, k2)).epsilon(1e-13));
      CHECK(penalty(v, GroupShape::vec(k2)) == Approx(oracle::penalty(v, 1, k2)).epsilon(1e-13));
    }
  }

  TEST_CASE("group larger than the signal is zero padded") {
    const auto x = RealTensor::vec({3.0, 4.0});
    // anchors 0 and 1: sqrt(9 + 16) + 4
    CHECK(penalty(x, GroupShape::vec(5)) == Approx(9.0));
  }

  TEST_CASE("cost examples") {
    const auto y = RealTensor::vec({2.0});
    const auto x = RealTensor::vec({0.5});
    CHECK(cost(y, x, 1.5, GroupShape::vec(1)) == Approx(1.875));
    const auto z = oracle::random_real(Shape::vec(30), 9);
    CHECK(cost(z, z, 0.7, GroupShape::vec(3)) ==
          Approx(0.7 * penalty(z, GroupShape::vec(3))));
    CHECK(cost(z, RealTensor(z.shape()), 0.7, GroupShape::vec(3)) ==
          Approx(0.5 * squared_norm(z)));
    CHECK_THROWS_AS(cost(z, RealTensor(Shape::vec(29)), 1.0, GroupShape::vec(3)),
                    ValidationError);
  }

  TEST_CASE("smoothed penalty") {
    CHECK(penalty_smoothed(RealTensor(Shape::vec(10)), GroupShape::vec(3), 1e-4) ==
          Approx(0.1));
    RealTensor x(Shape::vec(10));
    x[5] = 1.0;
    CHECK(penalty_smoothed(x, GroupShape::vec(1), 3.0) ==
          Approx(2.0 + 9.0 * std::sqrt(3.0)));
    const auto z = oracle::random_real(Shape::vec(25), 4);
    const double p = penalty(z, GroupShape::vec(3));
    for (double eps : {1e-2, 1e-6, 1e-10}) {
      const double s = penalty_smoothed(z, GroupShape::vec(3), eps);
      CHECK(s > p);
      CHECK(s - p <= std::sqrt(eps) * 25 + 1e-12);
    }
    CHECK_THROWS_AS(penalty_smoothed(z, GroupShape::vec(3), 0.0), ValidationError);
    CHECK_THROWS_AS(penalty_smoothed(z, GroupShape::vec(3), -1.0), ValidationError);
  }

  TEST_CASE("non-finite input is rejected") {
    auto x = oracle::random_real(Shape::vec(5), 1);
    x[2] = NAN;
    CHECK_THROWS_AS(penalty(x, GroupShape::vec(2)), ValidationError);
  }

  TEST_CASE("convexity, sign invariance, magnitude monotonicity") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit;
    const auto g = GroupShape::mat(2, 3);
    for (std::uint64_t s = 0; s < 30; ++s) {
      const auto x = oracle::random_complex(Shape::mat(6, 7), 100 + s, 0.2);
      const auto u = oracle::random_complex(Shape::mat(6, 7), 200 + s, 0.2);
      const double t = unit(rng);
      ComplexTensor mix(x.shape());
      for (std::size_t i = 0; i < x.size(); ++i) mix[i] = t * x[i] + (1 - t) * u[i];
      CHECK(penalty(mix, g) <= t * penalty(x, g) + (1 - t) * penalty(u, g) + 1e-10);

      ComplexTensor rot = x;
      for (auto& v : rot.values()) v *= std::polar(1.0, 6.28 * unit(rng));
      CHECK(penalty(rot, g) == Approx(penalty(x, g)).epsilon(1e-12));

      ComplexTensor big = x;
      const std::size_t i = s % x.size();
      big[i] = (std::abs(x[i]) + 0.5) * std::polar(1.0, std::arg(x[i]));
      CHECK(penalty(big, g) >= penalty(x, g));
    }
  }

  TEST_CASE("interior translation invariance") {
    RealTensor x(Shape::vec(40));
    const auto body = oracle::random_real(Shape::vec(10), 5);
    for (std::size_t i = 0; i < 10; ++i) x[12 + i] = body[i];
    RealTensor shifted(Shape::vec(40));
    for (std::size_t i = 0; i < 40; ++i) shifted[(i + 1) % 40] = x[i];
    const auto g = GroupShape::vec(4);
    CHECK(penalty(shifted, g) == Approx(penalty(x, g)).epsilon(1e-12));
  }

  TEST_CASE("cost is strictly convex along random segments") {
    const auto y = oracle::random_real(Shape::vec(30), 8);
    const auto g = GroupShape::vec(3);
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto a = oracle::random_real(Shape::vec(30), 300 + s);
      const auto b = oracle::random_real(Shape::vec(30), 400 + s);
      RealTensor m(a.shape());
      for (std::size_t i = 0; i < 30; ++i) m[i] = 0.5 * (a[i] + b[i]);
      CHECK(cost(y, m, 0.8, g) < 0.5 * (cost(y, a, 0.8, g) + cost(y, b, 0.8, g)));
    }
  }

  TEST_CASE("periodic groups wrap around the edges") {
    RealTensor x(Shape::vec(6));
    x[0] = 3.0;
    x[5] = 4.0;
    // anchor 5 with K=2 covers samples 5 and 0 under wrap-around.
    const double wrapped = penalty(x, GroupShape::vec(2), Boundary::Periodic);
    CHECK(wrapped == Approx(3.0 + 4.0 + 5.0));
    CHECK(penalty(x, GroupShape::vec(2)) == Approx(3.0 + 4.0 + 4.0));
    const auto m = oracle::random_real(Shape::mat(5, 6), 2);
    RealTensor rolled(m.shape());
    for (std::size_t r = 0; r < 5; ++r)
      for (std::size_t c = 0; c < 6; ++c) rolled((r + 2) % 5, (c + 1) % 6) = m(r, c);
    CHECK(penalty(rolled, GroupShape::mat(2, 3), Boundary::Periodic) ==
          Approx(penalty(m, GroupShape::mat(2, 3), Boundary::Periodic)).epsilon(1e-13));
  }
}
