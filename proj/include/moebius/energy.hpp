#pragma once

#include <cstddef>
#include <string>

#include "moebius/curve.hpp"

namespace moebius {

struct QuadratureScheme {
  /// Parameter-grid size; 0 means the curve's own N.
  std::size_t n_u = 0;
  /// w-grid size; 0 means n_u. Must be ≥ n_u.
  std::size_t n_w = 0;
  /// Singular cutoff; 0 selects the analytic diagonal limit.
  double eps = 0.0;
  /// Richardson extrapolation in ε (only with eps > 0).
  bool extrapolate = false;
  Thresholds thresholds{};

  /// Scheme with n_u/n_w filled in for a given curve; validates the invariants.
  QuadratureScheme resolved(const ClosedCurve& curve) const;
};

struct EnergyReport {
  double value = 0.0;
  std::string method;
  bool reparametrized = false;
  double arclength_defect = 0.0;
  double bilipschitz = 0.0;
  QuadratureScheme scheme;
};

/// Arc-length, unit-length copy of `curve` sampled on n points: the common
/// starting point for every scale-invariant quantity.
ClosedCurve normalized_arclength(const ClosedCurve& curve, std::size_t n = 0, const Thresholds& th = {});

double moebius_energy(const ClosedCurve& curve, const QuadratureScheme& scheme = {});
EnergyReport moebius_energy_report(const ClosedCurve& curve, const QuadratureScheme& scheme = {});

/// E^(α,p). α = 2, p = 1 is the Möbius energy. For α > 2 the diagonal is not
/// integrable and ε > 0 is required (DomainError "cutoff-dependent" otherwise).
double ohara_energy(const ClosedCurve& curve, double alpha, double p, const QuadratureScheme& scheme = {});

/// lim_{w→0} of the E^(2) integrand at u: κ(u)²ℒ²/12. Requires an arc-length curve.
double integrand_diagonal_limit(const ClosedCurve& curve, double u);

/// E_ε over U_ε in the curve's own parametrization.
double truncated_energy(const ClosedCurve& curve, double eps);

}  // namespace moebius
