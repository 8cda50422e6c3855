#include <doctest.h>

#include <numbers>

#include "ogs/stft.hpp"
#include "oracles.hpp"

using namespace ogs;
using doctest::Approx;

namespace {

double rel_err(const RealTensor& a, const RealTensor& b) {
  double d = 0.0, n = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d += (a[i] - b[i]) * (a[i] - b[i]);
    n += a[i] * a[i];
  }
  return std::sqrt(d / n);
}

double inner(const ComplexTensor& a, const ComplexTensor& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (std::conj(a[i]) * b[i]).real();
  return acc;
}

}  // namespace

TEST_SUITE("stft") {
  TEST_CASE("config validation") {
    StftConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK(c.bins() == 257);
    CHECK(c.noise_scale() == Approx(1.0).epsilon(1e-12));
    c.hop = 200;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = StftConfig{};
    c.window = "hann";
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c.hop = 128;
    CHECK_NOTHROW(c.validate());
    c.window = "blackman";
    CHECK_THROWS_AS(c.validate(), ValidationError);
  }

  TEST_CASE("normalized window overlap-adds to one") {
    for (auto [w, hop] : {std::pair{"sqrt-hann", 256}, {"hann", 128}, {"rect", 512}, {"rect", 128}}) {
      StftConfig c;
      c.window = w;
      c.hop = static_cast<std::size_t>(hop);
      const auto win = c.window_samples();
      for (std::size_t n = 0; n < c.hop; ++n) {
        double s = 0.0;
        for (std::size_t m = n; m < c.frame_len; m += c.hop) s += win[m] * win[m];
        CHECK(s == Approx(1.0).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("round trip and Parseval on assorted lengths") {
    const std::size_t lengths[] = {512, 513, 700, 1000, 1024, 4097, 12345};
    std::uint64_t seed = 0;
    for (std::size_t n : lengths)
      for (auto [frame, hop, window] : {std::tuple{512, 256, "sqrt-hann"},
                                        std::tuple{256, 64, "hann"},
                                        std::tuple{128, 32, "rect"}}) {
        if (n < static_cast<std::size_t>(frame)) continue;
        StftConfig c;
        c.frame_len = static_cast<std::size_t>(frame);
        c.hop = static_cast<std::size_t>(hop);
        c.window = window;
        const auto s = oracle::random_real(Shape::vec(n), ++seed);
        const auto grid = stft_forward(s, c);
        CHECK(grid.bins() == c.bins());
        CHECK(grid.frames() == stft_frame_count(n, c));
        CHECK(rel_err(s, stft_inverse(grid)) < 1e-12);
        CHECK(squared_norm(grid.coeffs) == Approx(squared_norm(s)).epsilon(1e-10));
      }
  }

  TEST_CASE("inverse is the adjoint of the forward transform") {
    StftConfig c;
    const auto s = oracle::random_real(Shape::vec(3000), 1);
    auto grid = stft_forward(s, c);
    grid.coeffs = oracle::random_complex(grid.coeffs.shape(), 2);
    // DC and Nyquist rows must be real for a real signal's spectrum
    for (std::size_t f = 0; f < grid.frames(); ++f) {
      grid.coeffs(0, f) = grid.coeffs(0, f).real();
      grid.coeffs(c.bins() - 1, f) = grid.coeffs(c.bins() - 1, f).real();
    }
    const auto back = stft_inverse(grid);
    double lhs = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) lhs += s[i] * back[i];
    CHECK(lhs == Approx(inner(stft_forward(s, c).coeffs, grid.coeffs)).epsilon(1e-10));
  }

  TEST_CASE("zero grid, linearity") {
    StftConfig c;
    const auto s = oracle::random_real(Shape::vec(2000), 3);
    auto zero = stft_forward(s, c);
    for (auto& v : zero.coeffs.values()) v = Complex{};
    CHECK(squared_norm(stft_inverse(zero)) == 0.0);

    auto a = stft_forward(s, c);
    auto b = stft_forward(oracle::random_real(Shape::vec(2000), 4), c);
    auto sum = a;
    for (std::size_t i = 0; i < sum.coeffs.size(); ++i) sum.coeffs[i] += b.coeffs[i];
    const auto ia = stft_inverse(a), ib = stft_inverse(b), is = stft_inverse(sum);
    for (std::size_t i = 0; i < is.size(); ++i) CHECK(std::abs(is[i] - ia[i] - ib[i]) < 1e-12);
  }

  TEST_CASE("bin-centered sinusoid concentrates in one bin") {
    StftConfig c;
    c.window = "rect";
    c.hop = 512;
    const std::size_t n = 512 * 20, bin = 37;
    RealTensor s(Shape::vec(n));
    for (std::size_t i = 0; i < n; ++i)
      s[i] = std::cos(2 * std::numbers::pi * static_cast<double>(bin * i) / 512.0);
    const auto grid = stft_forward(s, c);
    for (std::size_t f = 0; f < grid.frames(); ++f) {
      double total = 0.0;
      for (std::size_t k = 0; k < grid.bins(); ++k) total += std::norm(grid.coeffs(k, f));
      if (total == 0.0) continue;
      CHECK(std::norm(grid.coeffs(bin, f)) / total > 0.99);
    }
    // With the default tapered window the energy sits in the bin and its two
    // neighbours.
    const auto g2 = stft_forward(s, StftConfig{});
    const std::size_t f = g2.frames() / 2;
    double total = 0.0, near = 0.0;
    for (std::size_t k = 0; k < g2.bins(); ++k) {
      total += std::norm(g2.coeffs(k, f));
      if (k + 1 >= bin && k <= bin + 1) near += std::norm(g2.coeffs(k, f));
    }
    CHECK(near / total > 0.99);
  }

  TEST_CASE("white noise maps to unit coefficient variance") {
    const auto s = oracle::random_real(Shape::vec(200000), 8);
    const auto grid = stft_forward(s, StftConfig{});
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 1; k + 1 < grid.bins(); ++k)
      for (std::size_t f = 2; f + 2 < grid.frames(); ++f) {
        acc += std::norm(grid.coeffs(k, f));
        ++count;
      }
    CHECK(acc / static_cast<double>(count) == Approx(1.0).epsilon(0.01));
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(stft_forward(RealTensor(Shape::vec(100)), StftConfig{}), ValidationError);
    CHECK_THROWS_AS(stft_forward(RealTensor(Shape::mat(2, 600)), StftConfig{}), ValidationError);
    auto grid = stft_forward(oracle::random_real(Shape::vec(1000), 1), StftConfig{});
    grid.original_length = 5000;
    CHECK_THROWS_AS(stft_inverse(grid), ValidationError);
  }
}
