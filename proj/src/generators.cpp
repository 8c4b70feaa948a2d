#include "moebius/generators.hpp"

#include <cmath>
#include <numbers>

#include "moebius/error.hpp"

namespace moebius::gen {
namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

ClosedCurve circle(std::size_t n, double radius, std::size_t dim) {
  if (dim < 2) throw InvalidInput("circle needs dim >= 2");
  return ClosedCurve(PeriodicField::sample(dim, n, [&](double u, std::size_t a) {
    if (a == 0) return radius * std::cos(kTwoPi * u);
    if (a == 1) return radius * std::sin(kTwoPi * u);
    return 0.0;
  }));
}

ClosedCurve ellipse(std::size_t n, double a, double b) {
  return ClosedCurve(PeriodicField::sample(2, n, [&](double u, std::size_t k) {
    return k == 0 ? a * std::cos(kTwoPi * u) : b * std::sin(kTwoPi * u);
  }));
}

ClosedCurve torus_knot(std::size_t n, int p, int q, double R, double r) {
  if (!(R > r && r > 0.0)) throw DomainError("torus knot needs R > r > 0");
  return ClosedCurve(PeriodicField::sample(3, n, [&](double u, std::size_t k) {
    const double t = kTwoPi * u;
    const double rad = R + r * std::cos(q * t);
    if (k == 0) return rad * std::cos(p * t);
    if (k == 1) return rad * std::sin(p * t);
    return r * std::sin(q * t);
  }));
}

ClosedCurve perturbed_circle(std::size_t n, int mode, double amplitude, std::size_t dim) {
  return ClosedCurve(PeriodicField::sample(dim, n, [&](double u, std::size_t a) {
    const double rad = 1.0 + amplitude * std::cos(kTwoPi * mode * u);
    if (a == 0) return rad * std::cos(kTwoPi * u);
    if (a == 1) return rad * std::sin(kTwoPi * u);
    return 0.0;
  }));
}

ClosedCurve distorted_circle(std::size_t n, double amplitude) {
  return ClosedCurve(PeriodicField::sample(2, n, [&](double u, std::size_t a) {
    const double phi = u + amplitude * std::sin(kTwoPi * u);
    return a == 0 ? std::cos(kTwoPi * phi) : std::sin(kTwoPi * phi);
  }));
}

ClosedCurve lemniscate(std::size_t n) {
  return ClosedCurve(PeriodicField::sample(2, n, [&](double u, std::size_t a) {
    return a == 0 ? std::cos(kTwoPi * u) : 0.5 * std::sin(2.0 * kTwoPi * u);
  }));
}

PeriodicField rotate(const PeriodicField& f, std::size_t i, std::size_t j, double angle) {
  if (i >= f.dim() || j >= f.dim() || i == j) throw InvalidInput("invalid rotation plane");
  PeriodicField out = f;
  const double c = std::cos(angle), s = std::sin(angle);
  for (std::size_t k = 0; k < f.size(); ++k) {
    out(i, k) = c * f(i, k) - s * f(j, k);
    out(j, k) = s * f(i, k) + c * f(j, k);
  }
  return out;
}

ClosedCurve rotate(const ClosedCurve& c, std::size_t i, std::size_t j, double angle) {
  return ClosedCurve(rotate(c.samples(), i, j, angle));
}

ClosedCurve translate(const ClosedCurve& c, const Point& v) {
  if (v.size() != c.dim()) throw InvalidInput("translation dimension mismatch");
  PeriodicField f = c.samples();
  for (std::size_t a = 0; a < f.dim(); ++a)
    for (double& x : f.component(a)) x += v[a];
  return ClosedCurve(std::move(f));
}

ClosedCurve scale(const ClosedCurve& c, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("scale factor must be positive");
  return ClosedCurve(lambda * c.samples());
}

ClosedCurve sphere_inversion(const ClosedCurve& c, const Point& center, double radius) {
  if (center.size() != c.dim()) throw InvalidInput("inversion center dimension mismatch");
  PeriodicField f = c.samples();
  for (std::size_t j = 0; j < f.size(); ++j) {
    double q = 0.0;
    for (std::size_t a = 0; a < f.dim(); ++a) q += (f(a, j) - center[a]) * (f(a, j) - center[a]);
    if (!(q > 0.0)) throw DomainError("inversion center lies on the curve");
    for (std::size_t a = 0; a < f.dim(); ++a) f(a, j) = center[a] + radius * radius * (f(a, j) - center[a]) / q;
  }
  return ClosedCurve(std::move(f));
}

}  // namespace moebius::gen
