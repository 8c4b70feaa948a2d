#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "doctest.h"
#include "moebius/error.hpp"
#include "moebius/spectral.hpp"
#include "oracles.hpp"

using namespace moebius;
using namespace moebius::spectral;
constexpr double kPi = std::numbers::pi;

namespace {
PeriodicField cosine(std::size_t n, int k, double amp = 1.0) {
  return PeriodicField::sample(1, n, [&](double u, std::size_t) { return amp * std::cos(2 * kPi * k * u); });
}
PeriodicField sine(std::size_t n, int k) {
  return PeriodicField::sample(1, n, [&](double u, std::size_t) { return std::sin(2 * kPi * k * u); });
}
PeriodicField random_band_limited(std::size_t n, int kmax, std::uint64_t seed, std::size_t dim = 1) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<double> a(dim * kmax), b(dim * kmax), c(dim);
  for (auto& x : a) x = nd(rng);
  for (auto& x : b) x = nd(rng);
  for (auto& x : c) x = nd(rng);
  return PeriodicField::sample(dim, n, [&](double u, std::size_t d) {
    double v = c[d];
    for (int k = 1; k <= kmax; ++k)
      v += (a[d * kmax + k - 1] * std::cos(2 * kPi * k * u) + b[d * kmax + k - 1] * std::sin(2 * kPi * k * u)) / k;
    return v;
  });
}
double max_abs_diff(const PeriodicField& a, const PeriodicField& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.raw().size(); ++i) m = std::max(m, std::abs(a.raw()[i] - b.raw()[i]));
  return m;
}
double grid_dot(const PeriodicField& a, const PeriodicField& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.raw().size(); ++i) s += a.raw()[i] * b.raw()[i];
  return s;
}

/// 2∫_ε^{1/2} [(2πk)²/2·π²/sin²(πw) − 2sin²(πkw)·Σ_n (w+n)^{-4}] dw, with the
/// periodized quartic kernel summed directly over images.
double pairing_oracle(int k, double eps) {
  auto k4 = [](double w) {
    double s = 0;
    for (int n = -2000; n <= 2000; ++n) s += std::pow(w + n, -4);
    return s;
  };
  return 2.0 * oracle::integrate(
                   [&](double w) {
                     const double s = std::sin(kPi * w);
                     const double sk = std::sin(kPi * k * w);
                     return std::pow(2 * kPi * k, 2) / 2 * kPi * kPi / (s * s) - 2 * sk * sk * k4(w);
                   },
                   eps, 0.5, 1e-12);
}
}  // namespace

TEST_CASE("fractional Laplacian on eigenfunctions") {
  CHECK(max_abs_diff(frac_laplacian(PeriodicField(1, 64, 3.0), 0.5), PeriodicField(1, 64)) < 1e-12);
  CHECK(max_abs_diff(frac_laplacian(cosine(64, 1), 0.5), cosine(64, 1, std::sqrt(2 * kPi))) < 1e-12);
  auto s4 = sine(64, 2);
  CHECK(max_abs_diff(frac_laplacian(s4, 1.0), 4 * kPi * s4) < 1e-11);
  for (double s : {0.25, 0.5, 1.0})
    for (int k = 1; k <= 16; ++k) {
      const double lam = std::pow(2 * kPi * k, s);
      CHECK(max_abs_diff(frac_laplacian(cosine(64, k), s), lam * cosine(64, k)) < 1e-10);
      CHECK(max_abs_diff(frac_laplacian(sine(64, k), s), lam * sine(64, k)) < 1e-10);
    }
  CHECK_THROWS_AS(frac_laplacian(cosine(16, 1), 0.0), DomainError);
  CHECK_THROWS_AS(frac_laplacian(cosine(16, 1), 2.5), DomainError);
  CHECK_NOTHROW(frac_laplacian(cosine(16, 1), 2.0));
}

TEST_CASE("Riesz potential") {
  CHECK(max_abs_diff(riesz_potential(cosine(64, 1), 0.5), cosine(64, 1, std::pow(2 * kPi, -0.5))) < 1e-12);
  CHECK(max_abs_diff(riesz_potential(PeriodicField(1, 64, -2.0), 0.3), PeriodicField(1, 64)) < 1e-14);
  auto f = random_band_limited(128, 20, 3);
  auto centered = f;
  double m = 0;
  for (double v : f.component(0)) m += v / 128;
  for (double& v : centered.component(0)) v -= m;
  CHECK(max_abs_diff(riesz_potential(riesz_potential(centered, 0.25), 0.25), riesz_potential(centered, 0.5)) < 1e-10);
  for (double s : {0.25, 0.5, 0.75}) {
    auto back = riesz_potential(frac_laplacian(f, s), s);
    CHECK(max_abs_diff(back, centered) < 1e-10);
    double mean = 0;
    const auto r = riesz_potential(f, s);
    for (double v : r.component(0)) mean += v;
    CHECK(std::abs(mean) < 1e-12);
  }
  CHECK_THROWS_AS(riesz_potential(f, 1.0), DomainError);
}

TEST_CASE("self-adjointness on the grid") {
  auto f = random_band_limited(128, 30, 11);
  auto g = random_band_limited(128, 30, 12);
  for (double s : {0.25, 0.5, 1.0, 1.5}) {
    const double a = grid_dot(f, frac_laplacian(g, s));
    const double b = grid_dot(g, frac_laplacian(f, s));
    CHECK(std::abs(a - b) < 1e-10 * (1 + std::abs(a)));
  }
}

TEST_CASE("Gagliardo pairing against an independent quadrature") {
  for (int k : {1, 2, 3}) {
    const double eps = 1e-2;
    const double got = gagliardo_pairing(cosine(64, k), cosine(64, k), eps);
    CHECK(got == doctest::Approx(pairing_oracle(k, eps)).epsilon(1e-9));
  }
  CHECK(gagliardo_pairing(PeriodicField(1, 64, 2.0), PeriodicField(1, 64, 2.0), 1e-3) == 0.0);
  auto f = random_band_limited(64, 5, 1);
  auto hi = PeriodicField::sample(1, 64, [](double u, std::size_t) {
    return std::cos(2 * kPi * 7 * u) - 0.4 * std::sin(2 * kPi * 9 * u);
  });
  CHECK(std::abs(gagliardo_pairing(f, hi, 1e-3)) < 1e-8);
  auto g = random_band_limited(64, 12, 2);
  CHECK(gagliardo_pairing(f, g, 1e-3) == gagliardo_pairing(g, f, 1e-3));
}

TEST_CASE("pairing ratio is mode independent and positive") {
  auto ratio = [](int k, double amp) {
    auto f = cosine(64, k, amp);
    return spectral_pairing(f, f) / pairing_limit(f, f);
  };
  CHECK(std::abs(ratio(1, 1.0) / ratio(2, 1.0) - 1.0) < 1e-3);
  CHECK(ratio(3, 2.0) == doctest::Approx(ratio(3, 1.0)).epsilon(1e-12));

  const Calibration cal = calibrate_pairing_constant();
  CHECK(cal.c > 0.0);
  CHECK(cal.spread < 1e-3);
  CHECK(cal.ratios.size() == 5);
  // Full-line value: ∫_ℝ (x² − sin²x)/x⁴ dx = 2π/3 gives c = 3/π.
  const double line = 2.0 * oracle::integrate_endpoint(
                                [](double x) {
                                  if (x < 1e-3) return 1.0 / 3.0 - 2.0 * x * x / 45.0;
                                  const double s = std::sin(x);
                                  return (x * x - s * s) / (x * x * x * x);
                                },
                                0.0, 1.0) +
                      2.0 * oracle::integrate_endpoint(
                                [](double t) {
                                  // x = 1/t maps (1, ∞) to (0, 1).
                                  if (t < 1e-60) return 0.0;
                                  const double x = 1.0 / t;
                                  const double s = std::sin(x);
                                  return (x * x - s * s) / (x * x * x * x) / (t * t);
                                },
                                0.0, 1.0);
  CHECK(line == doctest::Approx(2 * kPi / 3).epsilon(1e-8));
  CHECK(cal.c == doctest::Approx(8.0 / (4.0 * line)).epsilon(1e-6));

  // The literal unit window carries a mode-dependent boundary term.
  auto unit = [](int k) {
    auto f = cosine(64, k);
    return spectral_pairing(f, f) / pairing_limit(f, f, 1e-3, PairingWindow::Unit);
  };
  CHECK(std::abs(unit(1) / unit(5) - 1.0) > 1e-2);
  CHECK_THROWS_AS(calibrate_pairing_constant(PairingWindow::Unit), CalibrationUnstable);
}

TEST_CASE("Besov seminorm") {
  SeminormSpec spec;
  CHECK(besov_seminorm(PeriodicField(1, 64, 5.0), spec) == 0.0);
  auto f = random_band_limited(64, 6, 5, 2);
  CHECK(besov_seminorm(3.0 * f, spec) == doctest::Approx(3.0 * besov_seminorm(f, spec)).epsilon(1e-12));
  CHECK(besov_seminorm(f, spec) > 0.0);

  // ‖cos(2π(·+w)) − cos(2π·)‖₂² = 2 sin²(πw).
  const double ref = std::sqrt(2.0 * oracle::integrate_endpoint(
                                         [](double w) {
                                           const double s = std::sin(kPi * w);
                                           return w < 1e-8 ? 2 * kPi * kPi : 2.0 * s * s / (w * w);
                                         },
                                         0.0, 0.5));
  CHECK(besov_seminorm(cosine(64, 1), spec) == doctest::Approx(ref).epsilon(1e-9));

  SeminormSpec rough{0.3, 2.0, 1.5, 0.5};
  const double ref2 = std::pow(2.0 * oracle::integrate_endpoint(
                                         [](double w) {
                                           if (w < 1e-12) return 0.0;
                                           const double d = std::sqrt(2.0) * std::sin(kPi * w);
                                           return std::pow(d, 1.5) / std::pow(w, 1.0 + 0.3 * 1.5);
                                         },
                                         0.0, 0.5),
                               1.0 / 1.5);
  CHECK(besov_seminorm(cosine(64, 1), rough) == doctest::Approx(ref2).epsilon(1e-6));

  SeminormSpec sup{0.5, 2.0, std::numeric_limits<double>::infinity(), 0.5};
  // sup_w √2 sin(πw)/√w is attained inside (0, 1/2).
  double best = 0;
  for (int i = 1; i < 100000; ++i) {
    const double w = 0.5 * i / 100000.0;
    best = std::max(best, std::sqrt(2.0) * std::sin(kPi * w) / std::sqrt(w));
  }
  CHECK(besov_seminorm(cosine(64, 1), sup) == doctest::Approx(best).epsilon(1e-4));
  CHECK_THROWS_AS(besov_seminorm(f, SeminormSpec{1.2, 2, 2, 0.5}), DomainError);
  CHECK_THROWS_AS(besov_seminorm(f, SeminormSpec{0.5, 0.5, 2, 0.5}), DomainError);
}

TEST_CASE("truncated H^1/2 seminorm") {
  CHECK(truncated_h12_seminorm(PeriodicField(1, 32, 1.0), 0.2) == 0.0);
  auto f = random_band_limited(128, 10, 9);
  double prev = 0.0;
  for (double eps : {0.001, 0.01, 0.05, 0.1, 0.2, 0.35, 0.5}) {
    const double v = truncated_h12_seminorm(f, eps);
    CHECK(v >= prev);
    prev = v;
  }
  // |Δf| ≤ |w|·max|f′| gives value(ε)² ≤ 2ε·max|f′|².
  auto c1 = cosine(128, 3);
  for (double eps : {0.01, 0.1, 0.5})
    CHECK(truncated_h12_seminorm(c1, eps) <= std::sqrt(2.0 * eps) * 6 * kPi + 1e-12);
  const double full = std::sqrt(2.0 * oracle::integrate_endpoint(
                                           [](double w) {
                                             const double s = std::sin(3 * kPi * w);
                                             return w < 1e-8 ? 18 * kPi * kPi : 2.0 * s * s / (w * w);
                                           },
                                           0.0, 0.5));
  CHECK(truncated_h12_seminorm(c1, 0.5) == doctest::Approx(full).epsilon(1e-10));
  CHECK_THROWS_AS(truncated_h12_seminorm(c1, 0.0), DomainError);
}
