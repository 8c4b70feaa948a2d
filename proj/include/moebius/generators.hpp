#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "moebius/curve.hpp"

namespace moebius::gen {

ClosedCurve circle(std::size_t n, double radius = 1.0, std::size_t dim = 2);
ClosedCurve ellipse(std::size_t n, double a, double b);
/// (p,q)-torus knot on the torus with radii R > r, embedded in ℝ³.
ClosedCurve torus_knot(std::size_t n, int p, int q, double R = 2.0, double r = 1.0);
/// Unit circle with radial profile 1 + amplitude·cos(2π·mode·u).
ClosedCurve perturbed_circle(std::size_t n, int mode, double amplitude, std::size_t dim = 2);
/// Unit circle traversed with parameter φ(u) = u + amplitude·sin(2πu).
ClosedCurve distorted_circle(std::size_t n, double amplitude);
/// Figure-eight (cos 2πu, sin(4πu)/2); self-intersects at the origin.
ClosedCurve lemniscate(std::size_t n);

/// Rotation by `angle` in the (i, j) coordinate plane.
ClosedCurve rotate(const ClosedCurve& c, std::size_t i, std::size_t j, double angle);
PeriodicField rotate(const PeriodicField& f, std::size_t i, std::size_t j, double angle);
ClosedCurve translate(const ClosedCurve& c, const Point& v);
ClosedCurve scale(const ClosedCurve& c, double lambda);
/// x ↦ center + radius²·(x − center)/|x − center|².
ClosedCurve sphere_inversion(const ClosedCurve& c, const Point& center, double radius = 1.0);

}  // namespace moebius::gen
