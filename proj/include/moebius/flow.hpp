#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "moebius/curve.hpp"
#include "moebius/energy.hpp"
#include "moebius/field.hpp"

namespace moebius {

struct FlowOptions {
  std::size_t max_steps = 200;
  /// Initial trial step, in units of the unit-length curve.
  double step0 = 1.0;
  double backtrack = 0.5;
  double armijo = 1e-4;
  /// Exponent σ_p of the inverse multiplier (1 + (2πk)²)^{−σ_p}; 0 gives L² descent.
  double precondition = 1.5;
  std::size_t reparam_interval = 5;
  double grad_tol = 1e-4;
  /// Trig-basis size per axis for the final Euler–Lagrange sweep; 0 skips it.
  std::size_t basis_size = 4;
  std::size_t max_backtracks = 40;
  /// Accepted curves keep the relative margin ≥ margin_fraction × its initial value.
  double margin_fraction = 0.5;
  /// Largest pointwise displacement per step as a fraction of the current margin.
  double max_displacement = 0.25;
  /// Curves and directions are kept in the modes k ≤ band_fraction·N/2.
  double band_fraction = 2.0 / 3.0;

  void validate() const;
};

enum class FlowStatus { Running, Converged, MaxSteps, Stalled, SelfIntersection };

const char* to_string(FlowStatus status);

struct FlowState {
  ClosedCurve curve;
  double energy = 0.0;
  /// L² norm of the band-limited gradient of the unit-length rescaled curve.
  double grad_norm = 0.0;
  std::size_t step_count = 0;
  std::vector<double> energy_trace{};
  double accepted_step = 0.0;
  /// injectivity_margin / length, at the start and for the current curve.
  double initial_margin = 0.0;
  double margin = 0.0;
  /// Relative margin after each accepted step.
  std::vector<double> margin_trace{};
  FlowStatus status = FlowStatus::Running;
  /// Per-mode Euler–Lagrange residuals from the final sweep.
  std::vector<double> el_residuals{};

  static FlowState start(const ClosedCurve& curve);
};

/// (1 + (2πk)²)^{−σ_p} applied coordinatewise to l2_gradient(curve).
PeriodicField sobolev_gradient(const ClosedCurve& curve, double precondition = 1.5);

/// One Armijo-backtracked descent step. Sets status to Converged (curve
/// unchanged) when grad_norm < grad_tol and Stalled when backtracking is
/// exhausted. Throws SelfIntersectionImminent when every trial step violates
/// the margin guard.
FlowState flow_step(FlowState state, const FlowOptions& options);

/// Runs flow_step until a terminal status; SelfIntersectionImminent is
/// caught and reported through `status`. `on_step` sees every accepted state.
FlowState minimize(const ClosedCurve& curve0, const FlowOptions& options = {},
                   const std::function<void(const FlowState&)>& on_step = {});

}  // namespace moebius
