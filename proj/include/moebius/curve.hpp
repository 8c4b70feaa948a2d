#pragma once

#include <cstddef>
#include <vector>

#include "moebius/field.hpp"
#include "moebius/fourier.hpp"

namespace moebius {

using Point = std::vector<double>;

struct Thresholds {
  double min_relative_speed = 1e-12;
  double min_bilipschitz = 1e-9;
  double arclength_tolerance = 1e-6;
};

struct CurveGeometry {
  PeriodicField derivative;
  PeriodicField speed;
  double length = 0.0;
  /// s_j = ℒ(γ|[0,u_j]) for j = 0..N; the last entry equals `length`.
  std::vector<double> cumulative_arclength;
};

/// Continuous arclength function s(u) = ℒ(γ|[0,u]) extended to ℝ by
/// s(u+1) = s(u) + ℒ. Built once per curve; O(N) per query.
class ArcLength {
 public:
  explicit ArcLength(const ClosedCurve& curve);
  ArcLength(const PeriodicField& speed, double length);

  double length() const noexcept { return length_; }
  double operator()(double u) const;
  /// Signed arclength from u to u + w.
  double arc(double u, double w) const { return (*this)(u + w) - (*this)(u); }
  /// min(|arc|, ℒ − |arc|).
  double intrinsic(double u, double w) const;
  /// Parameter u with s(u) = target, target in [0, ℒ]; bisection then Newton.
  double inverse(double target) const;

 private:
  double length_;
  fourier::TrigInterpolant periodic_;
  double offset_ = 0.0;
};

Point evaluate(const ClosedCurve& curve, double u);

CurveGeometry geometry(const ClosedCurve& curve, const Thresholds& th = {});

double length(const ClosedCurve& curve);

double intrinsic_distance(const ClosedCurve& curve, double u, double w);

double bilipschitz_constant(const ClosedCurve& curve, const Thresholds& th = {});

ClosedCurve reparametrize_arclength(const ClosedCurve& curve, std::size_t n_out = 0,
                                    const Thresholds& th = {});

double injectivity_margin(const ClosedCurve& curve);

/// Curvature κ of the curve at the grid nodes, computed spectrally.
PeriodicField curvature(const ClosedCurve& curve);

/// max_j | |γ'(u_j)| / ℒ − 1 |.
double arclength_defect(const ClosedCurve& curve);
bool is_arclength(const ClosedCurve& curve, double tol = Thresholds{}.arclength_tolerance);

/// Components laid out twice in a row (2N values each) so that a row j can
/// stream the targets j+1 .. j+N−1 contiguously.
std::vector<std::vector<double>> doubled_components(const PeriodicField& f);

}  // namespace moebius
