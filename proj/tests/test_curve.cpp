#include <cmath>
#include <numbers>

#include "doctest.h"
#include "moebius/curve.hpp"
#include "moebius/error.hpp"
#include "moebius/generators.hpp"
#include "oracles.hpp"

using namespace moebius;
constexpr double kPi = std::numbers::pi;

TEST_CASE("ClosedCurve validates its samples") {
  CHECK_THROWS_AS(ClosedCurve(PeriodicField(2, 24)), InvalidInput);
  CHECK_THROWS_AS(ClosedCurve(PeriodicField(1, 16)), InvalidInput);
  PeriodicField bad(2, 16);
  bad(0, 3) = std::nan("");
  CHECK_THROWS_AS(ClosedCurve{bad}, InvalidInput);
}

TEST_CASE("evaluate: node exactness, periodicity, band-limited reproduction") {
  auto c = gen::circle(64);
  auto p0 = evaluate(c, 0.0);
  CHECK(p0[0] == doctest::Approx(1.0).epsilon(1e-14));
  auto tk = gen::torus_knot(64, 2, 3);
  for (double u : {0.1, 0.37, 0.9}) {
    auto a = evaluate(tk, u), b = evaluate(tk, u + 1.0);
    for (std::size_t i = 0; i < 3; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-13));
  }
  auto q = evaluate(c, 1.0 / 128);
  CHECK(std::abs(q[0] - std::cos(kPi / 64)) < 1e-10);
  CHECK(std::abs(q[1] - std::sin(kPi / 64)) < 1e-10);
}

TEST_CASE("geometry: lengths") {
  CHECK(std::abs(geometry(gen::circle(64, 1.0 / (2 * kPi))).length - 1.0) < 1e-10);
  CHECK(std::abs(geometry(gen::circle(64)).length - 2 * kPi) < 1e-10);
  const double ref = oracle::ellipse_perimeter(1.0, 0.5);
  CHECK(std::abs(geometry(gen::ellipse(128, 1.0, 0.5)).length - ref) < 1e-10);
  CHECK(ref == doctest::Approx(4.84422).epsilon(1e-5));
  auto tk = gen::torus_knot(128, 2, 3);
  for (double lam : {0.25, 3.0})
    CHECK(geometry(gen::scale(tk, lam)).length == doctest::Approx(lam * geometry(tk).length).epsilon(1e-12));
  auto g = geometry(tk);
  CHECK(g.cumulative_arclength.back() == g.length);
  for (std::size_t j = 1; j < g.cumulative_arclength.size(); ++j)
    CHECK(g.cumulative_arclength[j] > g.cumulative_arclength[j - 1]);
}

TEST_CASE("geometry rejects vanishing speed") {
  auto f = PeriodicField::sample(2, 32, [](double u, std::size_t a) {
    return a == 0 ? std::cos(2 * kPi * u) : 0.0;
  });
  CHECK_THROWS_AS(geometry(ClosedCurve(f)), DegenerateCurve);
  PeriodicField still(2, 32, 1.0);
  CHECK_THROWS_AS(geometry(ClosedCurve(still)), DegenerateCurve);
}

TEST_CASE("intrinsic distance") {
  auto c = gen::circle(64, 1.0 / (2 * kPi));
  CHECK(intrinsic_distance(c, 0.2, 0.3) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(intrinsic_distance(c, 0.2, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(intrinsic_distance(c, 0.7, -0.3) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK_THROWS_AS(intrinsic_distance(c, 0.0, 0.6), DomainError);

  // φ(u) = u + 0.1 sin 2πu on the unit circle: speed 2πφ'(u).
  auto d = gen::distorted_circle(256, 0.1);
  const ArcLength s(d);
  for (auto [u, w] : {std::pair{0.1, 0.2}, std::pair{0.8, -0.45}, std::pair{0.3, 0.5}}) {
    const double arc = oracle::integrate(
        [](double t) { return 2 * kPi * (1.0 + 0.2 * kPi * std::cos(2 * kPi * t)); }, std::min(u, u + w),
        std::max(u, u + w));
    const double L = 2 * kPi;
    CHECK(std::abs(intrinsic_distance(d, u, w) - std::min(arc, L - arc)) < 1e-10);
    // The two arcs cut out by u and u+w partition the curve.
    const double lo = std::min(u, u + w), span = std::abs(w);
    CHECK(std::abs(s.arc(lo, span) + s.arc(lo + span, 1.0 - span) - L) < 1e-10);
  }
  const double half = s.intrinsic(0.3, 0.5) + s.intrinsic(0.8, 0.5);
  CHECK(half <= 2 * kPi + 1e-10);
}

TEST_CASE("bi-Lipschitz constant") {
  auto c = gen::circle(64, 1.0 / (2 * kPi));
  CHECK(bilipschitz_constant(c) == doctest::Approx(2.0 / kPi).epsilon(1e-10));
  for (auto curve : {gen::torus_knot(128, 2, 3), gen::ellipse(64, 1.0, 0.3), gen::perturbed_circle(64, 3, 0.2)}) {
    auto unit = reparametrize_arclength(gen::scale(curve, 1.0 / length(curve)));
    const double k = bilipschitz_constant(unit);
    CHECK(k > 0.0);
    CHECK(k <= 1.0 + 1e-9);
  }
  // Two lobes passing within 1e-11 of each other.
  auto pinched = PeriodicField::sample(2, 64, [](double u, std::size_t a) {
    const double t = 2 * kPi * u;
    return a == 0 ? std::sin(t) : std::sin(t) * std::cos(t) + 0.0 * t;
  });
  CHECK_THROWS_AS(bilipschitz_constant(ClosedCurve(pinched)), DegenerateCurve);
  CHECK_THROWS_AS(bilipschitz_constant(gen::lemniscate(64)), DegenerateCurve);
}

TEST_CASE("arc-length reparametrization") {
  auto c = gen::circle(128);
  auto r = reparametrize_arclength(c);
  for (std::size_t j = 0; j < 128; ++j) CHECK(std::abs(r(0, j) - c(0, j)) + std::abs(r(1, j) - c(1, j)) < 1e-10);

  auto d = gen::distorted_circle(256, 0.1);
  auto a = reparametrize_arclength(d);
  CHECK(arclength_defect(a) < 1e-8);
  CHECK(std::abs(length(a) - length(d)) < 1e-8);
  double worst = 0.0;
  for (std::size_t j = 0; j < 256; ++j) {
    // Oracle: invert the cumulative arclength u ↦ φ(u) independently, then evaluate the exact circle.
    const double target = j / 256.0;
    const double u = oracle::invert_monotone([](double t) { return t + 0.1 * std::sin(2 * kPi * t); }, target, 0.0, 1.0);
    const double phi = u + 0.1 * std::sin(2 * kPi * u);
    worst = std::max(worst, std::hypot(a(0, j) - std::cos(2 * kPi * phi), a(1, j) - std::sin(2 * kPi * phi)));
    CHECK(std::abs(std::hypot(a(0, j), a(1, j)) - 1.0) < 1e-8);
  }
  CHECK(worst < 1e-8);
  CHECK(a(0, 0) == doctest::Approx(d(0, 0)).epsilon(1e-14));

  auto tk = reparametrize_arclength(gen::torus_knot(256, 2, 3));
  auto tk2 = reparametrize_arclength(tk);
  double diff = 0.0;
  for (std::size_t j = 0; j < 256; ++j)
    for (std::size_t i = 0; i < 3; ++i) diff = std::max(diff, std::abs(tk(i, j) - tk2(i, j)));
  CHECK(diff < 1e-8);
  CHECK(arclength_defect(tk) < 1e-8);

  auto up = reparametrize_arclength(d, 512);
  CHECK(up.size() == 512);
  CHECK(arclength_defect(up) < 1e-8);
}

TEST_CASE("injectivity margin") {
  auto c = gen::circle(64);
  CHECK(injectivity_margin(c) == doctest::Approx(2.0 * std::sin(kPi / 8)).epsilon(1e-8));
  // The antipodal chord, the largest pair distance, is the diameter.
  auto p = evaluate(c, 0.0), q = evaluate(c, 0.5);
  CHECK(std::hypot(p[0] - q[0], p[1] - q[1]) == doctest::Approx(2.0).epsilon(1e-12));

  auto tk = gen::torus_knot(128, 2, 3);
  double brute = 1e300;
  const auto g = geometry(tk);
  for (std::size_t i = 0; i < 128; ++i)
    for (std::size_t j = 0; j < 128; ++j) {
      const double a = std::abs(g.cumulative_arclength[j] - g.cumulative_arclength[i]);
      if (std::min(a, g.length - a) < g.length / 8) continue;
      brute = std::min(brute, std::hypot(tk(0, i) - tk(0, j), tk(1, i) - tk(1, j), tk(2, i) - tk(2, j)));
    }
  CHECK(injectivity_margin(tk) > 0.0);
  CHECK(injectivity_margin(tk) == doctest::Approx(brute).epsilon(1e-14));

  // Samples 0 and 32 of a unit-speed loop coincide.
  auto dup = PeriodicField::sample(2, 64, [](double u, std::size_t a) {
    const double t = 2 * kPi * u;
    return a == 0 ? std::sin(2 * t) : std::sin(t);
  });
  dup(0, 32) = dup(0, 0);
  dup(1, 32) = dup(1, 0);
  CHECK(injectivity_margin(ClosedCurve(dup)) == 0.0);
}

TEST_CASE("curvature of circles and straight stretches") {
  auto k = curvature(gen::circle(64, 2.0));
  for (double v : k.component(0)) CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(is_arclength(gen::circle(64)));
  CHECK_FALSE(is_arclength(gen::ellipse(64, 1.0, 0.5)));
}
