#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "moebius/analysis.hpp"
#include "moebius/error.hpp"
#include "moebius/spectral.hpp"
#include "oracles.hpp"

using namespace moebius;
using namespace moebius::analysis;
constexpr double kPi = std::numbers::pi;

namespace {

PeriodicField scalar(std::size_t n, const std::function<double(double)>& f) {
  return PeriodicField::sample(1, n, [&](double u, std::size_t) { return f(u); });
}

PeriodicField random_steps(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  std::uniform_int_distribution<int> levels(1, 6);
  const int count = levels(rng);
  std::vector<double> values(count);
  for (auto& v : values) v = std::pow(ud(rng), 3) * 10.0;
  PeriodicField f(1, n);
  for (std::size_t j = 0; j < n; ++j) f(0, j) = values[static_cast<std::size_t>(ud(rng) * count)];
  return f;
}

PeriodicField trig_field(std::size_t n, std::size_t dim, int k_max, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<double> a(dim * k_max), b(dim * k_max);
  for (auto& x : a) x = nd(rng);
  for (auto& x : b) x = nd(rng);
  return PeriodicField::sample(dim, n, [&](double u, std::size_t d) {
    double v = 0.0;
    for (int k = 1; k <= k_max; ++k) {
      v += (a[d * k_max + k - 1] * std::cos(2 * kPi * k * u) + b[d * k_max + k - 1] * std::sin(2 * kPi * k * u)) /
           (1.0 + k * k);
    }
    return v;
  });
}

PeriodicField normalized(PeriodicField f) {
  for (std::size_t j = 0; j < f.size(); ++j) {
    double s = 0.0;
    for (std::size_t a = 0; a < f.dim(); ++a) s += f(a, j) * f(a, j);
    s = std::sqrt(s);
    for (std::size_t a = 0; a < f.dim(); ++a) f(a, j) /= s;
  }
  return f;
}

PeriodicField unit_circle_tangent(std::size_t n) {
  return PeriodicField::sample(2, n, [](double u, std::size_t a) {
    return a == 0 ? -std::sin(2 * kPi * u) : std::cos(2 * kPi * u);
  });
}

double max_abs(const PeriodicField& f) {
  double m = 0.0;
  for (double v : f.raw()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST_CASE("rearrangement of indicators, absolute values and the sine") {
  const std::size_t n = 64;
  PeriodicField ind(1, n);
  for (std::size_t j = 10; j < 17; ++j) ind(0, j) = 1.0;
  const auto r = decreasing_rearrangement(ind);
  CHECK(r.cell == doctest::Approx(1.0 / n));
  for (std::size_t i = 0; i < n; ++i) CHECK(r.values[i] == (i < 7 ? 1.0 : 0.0));

  const PeriodicField s = scalar(n, [](double u) { return std::sin(2 * kPi * u); });
  PeriodicField abs_s = s;
  for (double& v : abs_s.raw()) v = std::abs(v);
  CHECK(decreasing_rearrangement(s).values == decreasing_rearrangement(abs_s).values);

  // |{|sin 2πx| > s}| = 1 − (2/π) arcsin s, so f*(t) = cos(πt/2).
  const std::size_t big = 1024;
  const auto rs = decreasing_rearrangement(scalar(big, [](double u) { return std::sin(2 * kPi * u); }));
  for (double t : {0.01, 0.2, 0.5, 0.77, 0.95}) {
    CHECK(std::abs(rs(t) - std::cos(kPi * t / 2)) < 4.0 / big);
  }
  const double s_level = rs(0.3);
  CHECK(std::abs(1.0 - 2.0 / kPi * std::asin(s_level) - 0.3) < 4.0 / big);

  // Windows restrict the support.
  const auto rw = decreasing_rearrangement(ind, Window{0.125, 0.25});
  CHECK(rw.values.size() == 8);
  CHECK(rw.measure() == doctest::Approx(0.125));
}

TEST_CASE("Lorentz norms on step functions") {
  const std::size_t n = 64;
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const PeriodicField f = random_steps(n, rng);
    for (double p : {1.5, 2.0, 3.0, 7.0}) {
      double lp = 0.0;
      for (double v : f.raw()) lp += std::pow(std::abs(v), p);
      lp = std::pow(lp / n, 1.0 / p);
      CHECK(lorentz_norm(f, {p, p, {}}) == doctest::Approx(lp).epsilon(1e-13));
    }
    double l1 = 0.0;
    for (double v : f.raw()) l1 += std::abs(v) / n;
    CHECK(lorentz_norm(f, {1.0, 1.0, {}}) == doctest::Approx(l1).epsilon(1e-13));
    CHECK(lorentz_norm(f, {kInfinity, kInfinity, {}}) == doctest::Approx(max_abs(f)));
  }

  PeriodicField ind(1, n);
  for (std::size_t j = 0; j < 12; ++j) ind(0, j) = 1.0;
  for (double p : {1.5, 2.0, 4.0}) {
    CHECK(lorentz_norm(ind, {p, kInfinity, {}}) == doctest::Approx(std::pow(12.0 / n, 1.0 / p)).epsilon(1e-14));
  }

  // Levels 2 on measure 1/4 and 1 on measure 1/4:
  // ∫_0^{1/4} 2 t^{-1/2} dt + ∫_{1/4}^{1/2} t^{-1/2} dt = 2 + 2(√(1/2) − 1/2).
  PeriodicField two(1, n);
  for (std::size_t j = 0; j < 16; ++j) two(0, j) = 2.0;
  for (std::size_t j = 40; j < 56; ++j) two(0, j) = 1.0;
  auto antiderivative = [](double level, double t) { return 2.0 * level * std::sqrt(t); };
  const double oracle = antiderivative(2.0, 0.25) - antiderivative(2.0, 0.0) + antiderivative(1.0, 0.5) -
                        antiderivative(1.0, 0.25);
  CHECK(lorentz_norm(two, {2.0, 1.0, {}}) == doctest::Approx(oracle).epsilon(1e-14));

  for (auto [p, q] : {std::pair{1.0, 2.0}, std::pair{0.5, 1.0}, std::pair{kInfinity, 2.0}, std::pair{2.0, 0.5},
                      std::pair{1.0, kInfinity}}) {
    CHECK_THROWS_AS(lorentz_norm(two, {p, q, {}}), DomainError);
  }
}

TEST_CASE("Lorentz norms are monotone and satisfy a Hölder inequality") {
  const std::size_t n = 64;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const PeriodicField f = random_steps(n, rng);
    PeriodicField g = f;
    for (double& v : g.raw()) v = std::abs(v) + ud(rng);
    for (auto [p, q] : {std::pair{2.0, 1.0}, std::pair{3.0, kInfinity}, std::pair{1.5, 4.0}}) {
      CHECK(lorentz_norm(f, {p, q, {}}) <= lorentz_norm(g, {p, q, {}}) * (1 + 1e-14));
    }
  }

  struct Exponents {
    double p1, q1, p2, q2;
  };
  const std::vector<Exponents> suite{{4, 4, 4, 4},   {3, 2, 6, 2},         {4, kInfinity, 4, 2},
                                     {3, 3, 3, 1.5}, {6, 2, 3, kInfinity}, {8, 4, 8, 4},
                                     {4, 2, 4, 2},   {5, 8, 2.5, 8},       {3, kInfinity, 6, 3},
                                     {4, 2, 4, kInfinity}};
  double k_fit = 0.0;
  int cases = 0;
  for (const auto& e : suite) {
    const double p = 1.0 / (1.0 / e.p1 + 1.0 / e.p2);
    const double q = 1.0 / (1.0 / e.q1 + 1.0 / e.q2);
    for (int trial = 0; trial < 10; ++trial, ++cases) {
      const PeriodicField f = random_steps(n, rng);
      const PeriodicField g = random_steps(n, rng);
      PeriodicField fg(1, n);
      for (std::size_t j = 0; j < n; ++j) fg(0, j) = f(0, j) * g(0, j);
      const double lhs = lorentz_norm(fg, {p, q, {}});
      const double rhs = lorentz_norm(f, {e.p1, e.q1, {}}) * lorentz_norm(g, {e.p2, e.q2, {}});
      if (rhs > 0.0) k_fit = std::max(k_fit, lhs / rhs);
    }
  }
  CHECK(cases == 100);
  CHECK(k_fit > 0.0);
  CHECK(k_fit <= 4.0);
}

TEST_CASE("commutator H_s") {
  const std::size_t n = 64;
  const PeriodicField c = scalar(n, [](double) { return 2.5; });
  const PeriodicField b = trig_field(n, 1, 12, 3);
  const PeriodicField a = trig_field(n, 1, 12, 4);
  for (double s : {0.25, 0.5, 0.9}) {
    CHECK(max_abs(commutator_h(c, b, s)) < 1e-10);
    CHECK(commutator_h(a, b, s) == commutator_h(b, a, s));
  }
  // Bilinearity.
  const PeriodicField a2 = trig_field(n, 1, 12, 5);
  const PeriodicField lhs = commutator_h(2.0 * a - 3.0 * a2, b, 0.5);
  const PeriodicField rhs = 2.0 * commutator_h(a, b, 0.5) - 3.0 * commutator_h(a2, b, 0.5);
  CHECK(max_abs(lhs - rhs) < 1e-12 * (1.0 + max_abs(lhs)));

  // cos² = (1 + cos 4πx)/2: H = ½(4π)^{1/2} cos 4πx − 2 (2π)^{1/2} cos² 2πx.
  const PeriodicField cosine = scalar(n, [](double u) { return std::cos(2 * kPi * u); });
  const PeriodicField h = commutator_h(cosine, cosine, 0.5);
  const auto modes = fourier::forward(h.component(0));
  CHECK(modes[0].real()  == doctest::Approx(-std::sqrt(2 * kPi)).epsilon(1e-12));
  CHECK(2 * modes[2].real()  == doctest::Approx(0.5 * std::sqrt(4 * kPi) - std::sqrt(2 * kPi)).epsilon(1e-12));
  for (std::size_t k = 0; k < modes.size(); ++k) {
    if (k != 0 && k != 2) CHECK(std::abs(modes[k])  < 1e-13);
  }

  // Products of two band-limited fields are resolved without aliasing.
  const PeriodicField hi1 = scalar(n, [](double u) { return std::cos(2 * kPi * 20 * u); });
  const PeriodicField hi2 = scalar(n, [](double u) { return std::cos(2 * kPi * 18 * u); });
  const PeriodicField hh = commutator_h(hi1, hi2, 0.5);
  // Only the difference mode 2 survives on the N grid.
  const double expect2 = 0.5 * (std::sqrt(2 * kPi * 2) - std::sqrt(2 * kPi * 18) - std::sqrt(2 * kPi * 20));
  const auto hm = fourier::forward(hh.component(0));
  CHECK(2 * hm[2].real()  == doctest::Approx(expect2).epsilon(1e-12));
  CHECK(std::abs(hm[6])  < 1e-12);

  CHECK_THROWS_AS(commutator_h(c, scalar(32, [](double) { return 1.0; }), 0.5), InvalidInput);
}

TEST_CASE("normal and tangential split") {
  const std::size_t n = 16384;
  const PeriodicField t = normalized(trig_field(n, 3, 6, 21));
  const PeriodicField v = trig_field(n, 3, 9, 22);
  const Split sp = normal_tangential_split(t, v);
  REQUIRE(sp.tangential.size() == 3);
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double vv = 0.0;
    for (std::size_t a = 0; a < 3; ++a) vv += v(a, j) * v(a, j);
    double parts = sp.normal(0, j) * sp.normal(0, j);
    for (const auto& p : sp.tangential) parts += p(0, j) * p(0, j);
    worst = std::max(worst, std::abs(vv - parts) / std::max(vv, 1e-300));
  }
  CHECK(worst < 1e-12);

  PeriodicField par = t;
  par *= -2.0;
  const Split sp_par = normal_tangential_split(t, par);
  CHECK(max_abs(sp_par.normal - PeriodicField(1, n, -2.0)) < 1e-14);
  for (const auto& p : sp_par.tangential) CHECK(max_abs(p) < 1e-14);

  const PeriodicField tan2 = unit_circle_tangent(256);
  const PeriodicField perp = PeriodicField::sample(2, 256, [](double u, std::size_t a) {
    return 3.0 * (a == 0 ? std::cos(2 * kPi * u) : std::sin(2 * kPi * u));
  });
  const Split sp_perp = normal_tangential_split(tan2, perp);
  CHECK(max_abs(sp_perp.normal) < 1e-14);
  REQUIRE(sp_perp.tangential.size() == 1);
  for (std::size_t j = 0; j < 256; ++j) CHECK(std::abs(sp_perp.tangential[0](0, j)) == doctest::Approx(3.0));

  PeriodicField bad = tan2;
  bad(0, 17) *= 1.0 + 1e-7;
  CHECK_THROWS_AS(normal_tangential_split(bad, perp), NotUnit);
}

TEST_CASE("Γ critical term") {
  const std::size_t n = 64;
  CHECK(gamma_term(PeriodicField(3, n, 1.0 / std::sqrt(3.0)), 0.3) == 0.0);

  // Unit-length circle: |g′(a) − g′(b)| = 2|sin π(a − b)|.
  const PeriodicField g = unit_circle_tangent(n);
  auto inner_pair = [](double w) {
    // ∬_{(−1,1)²} 4 sin²(π(s₃ − s₄)w) = ∫_{−2}^{2} (2 − |Δ|) 4 sin²(πΔw) dΔ
    return 2.0 * oracle::integrate_panels(
                     [w](double d) { return (2.0 - d) * 4.0 * std::pow(std::sin(kPi * d * w), 2); }, 0.0, 2.0, 4);
  };
  auto outer = [](double w) { return 2.0 * 2.0 * (1.0 - std::cos(kPi * w)) / (kPi * w); };
  const double oracle_value = 2.0 * oracle::integrate_panels(
                                        [&](double w) { return outer(w) * inner_pair(w) / (w * w); }, 0.0, 0.25, 8);
  const double coarse = gamma_term(g, 0.0, {8, 16, 1e-6});
  const double fine = gamma_term(g, 0.0, {16, 32, 1e-7});
  CHECK(coarse == doctest::Approx(fine).epsilon(0.05));
  CHECK(fine == doctest::Approx(oracle_value).epsilon(1e-8));
  CHECK(gamma_term(g, 0.37) == doctest::Approx(coarse).epsilon(1e-10));

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const PeriodicField t = normalized(trig_field(n, 3, 5, seed));
    CHECK(gamma_term(t, 0.1 * static_cast<double>(seed)) >= 0.0);
  }
}

TEST_CASE("Morrey decay profile") {
  const std::size_t n = 256;
  const std::vector<double> radii{0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
  const std::vector<double> centers{0.0, 0.25, 0.5, 0.75};

  const auto flat = morrey_decay_profile(PeriodicField(1, n, 3.0), centers, radii);
  CHECK(flat.samples.size() == 20);
  CHECK(!flat.degenerate);
  CHECK(flat.sigma == doctest::Approx(0.5).epsilon(1e-12));
  for (const auto& s : flat.samples) CHECK(s.value == doctest::Approx(3.0 * std::sqrt(2.0 * s.radius)));

  const auto zero = morrey_decay_profile(PeriodicField(1, n), centers, radii);
  CHECK(zero.degenerate);
  CHECK(std::isnan(zero.sigma));
  for (const auto& s : zero.samples) CHECK(s.value == 0.0);

  const ClosedCurve knot(PeriodicField::sample(3, n, [](double u, std::size_t a) {
    const double t = 2 * kPi * u;
    const double r = 2.0 + std::cos(3 * t);
    return a == 0 ? r * std::cos(2 * t) : a == 1 ? r * std::sin(2 * t) : std::sin(3 * t);
  }));
  const auto smooth = morrey_decay_profile(half_derivative_magnitude(knot), centers, radii);
  CHECK(!smooth.degenerate);
  CHECK(smooth.sigma >= 0.4);

  CHECK_THROWS_AS(morrey_decay_profile(PeriodicField(1, n, 1.0), centers, {0.125, 0.0625}), InsufficientSamples);
  CHECK_THROWS_AS(morrey_decay_profile(PeriodicField(1, n, 1.0), centers, {0.125, 0.0625, 0.03}), DomainError);
  CHECK_THROWS_AS(morrey_decay_profile(PeriodicField(1, n, 1.0), centers, {0.25, 0.125, 0.0625}), DomainError);
}

TEST_CASE("iteration lemma") {
  const double theta = 1.0;
  const double c = 1.0;
  const std::size_t m = iteration_minimal_m(theta, c);
  CHECK(c / (std::exp2(0.5) - 1.0) * std::exp2(-0.5 * m) < 0.25);
  CHECK(c / (std::exp2(0.5) - 1.0) * std::exp2(-0.5 * (m - 1.0)) >= 0.25);
  const double eps = 0.2 * std::exp2(-theta * m);

  std::vector<double> geometric(60);
  for (std::size_t k = 0; k < geometric.size(); ++k) geometric[k] = std::exp2(-theta * k);
  const auto geo = iteration_lemma_check(geometric, theta, eps, m, c);
  CHECK(geo.holds);
  CHECK(geo.c_tilde == doctest::Approx(1.0));

  std::vector<double> spiked = geometric;
  spiked[m + 7] = 10.0;
  try {
    iteration_lemma_check(spiked, theta, eps, m, c);
    FAIL("expected HypothesisViolated");
  } catch (const HypothesisViolated& e) {
    CHECK(e.first_failing_k == 7);
  }
  CHECK_THROWS_AS(iteration_lemma_check(geometric, theta, 0.5, m, c), DomainError);
  CHECK_THROWS_AS(iteration_lemma_check(geometric, theta, eps, 1, c), DomainError);

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  int holds = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const double th = 0.5 + 2.0 * ud(rng);
    const double cc = 0.1 + 3.0 * ud(rng);
    const std::size_t mm = iteration_minimal_m(th, cc) + static_cast<std::size_t>(3 * ud(rng));
    const double ee = 0.25 * std::exp2(-th * mm) * (0.05 + 0.9 * ud(rng));
    std::vector<double> head(mm);
    for (auto& h : head) h = 5.0 * ud(rng);
    const auto b = iteration_sequence(head, 200, th, ee, mm, cc, rng(), trial % 2 == 0 ? 1.0 : 0.3);
    const auto r = iteration_lemma_check(b, th, ee, mm, cc);
    CHECK(r.c_tilde <= r.bound);
    for (std::size_t k = 0; k < b.size(); ++k) {
      CHECK(b[k] <= r.c_tilde * std::exp2(-0.5 * th * k) * (1 + 1e-12));
    }
    holds += r.holds ? 1 : 0;
  }
  CHECK(holds == 50);
}

TEST_CASE("multiplier estimate probe") {
  const std::vector<double> x{0.3, -1.0, 2.0}, y{1.1, 0.4, -0.2}, xi{-0.5, 0.2, 0.7};
  CHECK(multiplier_ratio(x, x, xi, 0.5, 0.25) == 0.0);
  const double base = multiplier_ratio(x, y, xi, 0.5, 0.25);
  for (double lambda : {1e-3, 0.5, 7.0, 1e4}) {
    auto scale = [lambda](std::vector<double> v) {
      for (double& c : v) c *= lambda;
      return v;
    };
    CHECK(multiplier_ratio(scale(x), scale(y), scale(xi), 0.5, 0.25) == doctest::Approx(base).epsilon(1e-10));
  }

  const auto first = multiplier_estimate_probe(0.5, 0.25, 100000);
  const auto rerun = multiplier_estimate_probe(0.5, 0.25, 100000, 777);
  CHECK(first.trials == 100000);
  CHECK(std::isfinite(first.max_ratio));
  CHECK(first.max_ratio > 0.0);
  CHECK(first.max_ratio <= 10.0);
  CHECK(rerun.max_ratio == doctest::Approx(first.max_ratio).epsilon(0.2));
  CHECK(multiplier_estimate_probe(0.5, 0.25, 1000).max_ratio ==
        multiplier_estimate_probe(0.5, 0.25, 1000).max_ratio);
}
