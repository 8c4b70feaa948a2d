#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "moebius/error.hpp"
#include "moebius/fourier.hpp"
#include "moebius/quadrature.hpp"

using namespace moebius;
namespace ft = moebius::fourier;
constexpr double kPi = std::numbers::pi;

namespace {
PeriodicField mode_field(std::size_t n, int k, bool sine = false) {
  return PeriodicField::sample(1, n, [&](double u, std::size_t) {
    return sine ? std::sin(2 * kPi * k * u) : std::cos(2 * kPi * k * u);
  });
}
}  // namespace

TEST_CASE("forward/inverse round trip") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  std::vector<double> v(64);
  for (double& x : v) x = nd(rng);
  auto back = ft::inverse(ft::forward(v), v.size());
  for (std::size_t j = 0; j < v.size(); ++j) CHECK(back[j] == doctest::Approx(v[j]).epsilon(1e-13));
}

TEST_CASE("spectral derivative of a trigonometric polynomial") {
  auto f = mode_field(32, 3, true);
  auto d = ft::derivative(f);
  auto d2 = ft::derivative(f, 2);
  for (std::size_t j = 0; j < 32; ++j) {
    const double u = j / 32.0;
    CHECK(std::abs(d(0, j) - 6 * kPi * std::cos(6 * kPi * u)) < 1e-11);
    CHECK(std::abs(d2(0, j) + 36 * kPi * kPi * std::sin(6 * kPi * u)) < 1e-10);
  }
  CHECK_THROWS_AS(ft::derivative(f, -1), DomainError);
}

TEST_CASE("shift and off-grid interpolation agree") {
  auto f = PeriodicField::sample(2, 32, [](double u, std::size_t a) {
    return a == 0 ? std::cos(2 * kPi * u) + 0.3 * std::sin(10 * kPi * u) : std::exp(std::sin(2 * kPi * u));
  });
  ft::TrigInterpolant ip(f);
  auto sh = ft::shift(f, 0.0137);
  std::vector<double> p(2);
  for (std::size_t j = 0; j < 32; j += 5) {
    ip.value(j / 32.0 + 0.0137, p);
    CHECK(sh(0, j) == doctest::Approx(p[0]).epsilon(1e-12));
    CHECK(sh(1, j) == doctest::Approx(p[1]).epsilon(1e-12));
  }
  ip.value(0.25, p);
  CHECK(p[0] == doctest::Approx(f(0, 8)).epsilon(1e-13));
}

TEST_CASE("interpolant derivative matches the spectral derivative at nodes") {
  auto f = mode_field(64, 5);
  ft::TrigInterpolant ip(f);
  auto d = ft::derivative(f);
  std::vector<double> g(1);
  for (std::size_t j = 0; j < 64; j += 7) {
    ip.derivative(j / 64.0, g);
    CHECK(g[0] == doctest::Approx(d(0, j)).epsilon(1e-10));
  }
}

TEST_CASE("resampling preserves band-limited data and keeps the Nyquist term") {
  auto f = mode_field(16, 8);
  auto up = ft::resample(f, 64);
  auto down = ft::resample(up, 16);
  for (std::size_t j = 0; j < 16; ++j) CHECK(down(0, j) == doctest::Approx(f(0, j)).epsilon(1e-12));
  auto g = mode_field(16, 2);
  auto g64 = ft::resample(g, 64);
  for (std::size_t j = 0; j < 64; ++j)
    CHECK(g64(0, j) == doctest::Approx(std::cos(4 * kPi * j / 64.0)).epsilon(1e-12));
}

TEST_CASE("periodic antiderivative") {
  auto f = PeriodicField::sample(1, 32, [](double u, std::size_t) { return 2.0 + std::cos(2 * kPi * u); });
  auto p = ft::periodic_antiderivative(f);
  for (std::size_t j = 0; j < 32; ++j)
    CHECK(p(0, j) == doctest::Approx(std::sin(2 * kPi * j / 32.0) / (2 * kPi)).epsilon(1e-12));
  CHECK(ft::mean(f)[0] == doctest::Approx(2.0));
}

TEST_CASE("Gauss-Legendre rules") {
  for (std::size_t n : {1u, 2u, 5u, 8u, 20u}) {
    const auto& r = quad::gauss_legendre(n);
    double s0 = 0, s2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      s0 += r.weights[i];
      s2 += r.weights[i] * r.nodes[i] * r.nodes[i];
    }
    CHECK(s0 == doctest::Approx(2.0).epsilon(1e-14));
    if (n >= 2) CHECK(s2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  }
  auto w = quad::dyadic_window(1.0 / 64, 0.5, 12, 0.1);
  double s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w.weights[i] / (w.nodes[i] * w.nodes[i]);
  CHECK(s == doctest::Approx(64.0 - 2.0).epsilon(1e-13));
  auto d = quad::dyadic_toward_left(0.0, 1.0, 1e-3, 10);
  double t = 0;
  for (std::size_t i = 0; i < d.size(); ++i) t += d.weights[i] * std::sqrt(d.nodes[i]);
  CHECK(std::abs(t - 2.0 / 3.0) < 1e-7);
}
