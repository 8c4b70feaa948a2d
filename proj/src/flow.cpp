#include "moebius/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "moebius/error.hpp"
#include "moebius/fourier.hpp"
#include "moebius/variation.hpp"

namespace moebius {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double relative_margin(const ClosedCurve& c) { return injectivity_margin(c) / length(c); }

PeriodicField band_limit(const PeriodicField& f, double fraction) {
  const double k_max = fraction * 0.5 * static_cast<double>(f.size());
  return fourier::apply_symbol(f, [k_max](std::size_t k) { return static_cast<double>(k) <= k_max ? 1.0 : 0.0; });
}

double max_point_norm(const PeriodicField& f) {
  double best = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    double s = 0.0;
    for (std::size_t a = 0; a < f.dim(); ++a) s += f(a, j) * f(a, j);
    best = std::max(best, s);
  }
  return std::sqrt(best);
}

ClosedCurve advance(const ClosedCurve& curve, const PeriodicField& direction, double scale, double band) {
  PeriodicField next = curve.samples();
  next -= scale * direction;
  return ClosedCurve(band_limit(next, band));
}

double band_gradient_norm(const ClosedCurve& curve, double band) {
  return length(curve) * l2_norm(band_limit(l2_gradient(curve), band));
}

}  // namespace

void FlowOptions::validate() const {
  if (!(step0 > 0.0)) throw DomainError("flow: step0 must be positive");
  if (!(backtrack > 0.0 && backtrack < 1.0)) throw DomainError("flow: backtracking factor must lie in (0,1)");
  if (!(armijo > 0.0 && armijo < 1.0)) throw DomainError("flow: Armijo constant must lie in (0,1)");
  if (!(precondition >= 0.0)) throw DomainError("flow: precondition exponent must be nonnegative");
  if (reparam_interval == 0) throw DomainError("flow: reparam_interval must be at least 1");
  if (!(grad_tol > 0.0)) throw DomainError("flow: grad_tol must be positive");
  if (max_backtracks == 0) throw DomainError("flow: max_backtracks must be at least 1");
  if (!(margin_fraction >= 0.0 && margin_fraction < 1.0)) throw DomainError("flow: margin_fraction in [0,1)");
  if (!(max_displacement > 0.0 && max_displacement <= 1.0)) throw DomainError("flow: max_displacement in (0,1]");
  if (!(band_fraction > 0.0 && band_fraction <= 1.0)) throw DomainError("flow: band_fraction in (0,1]");
}

const char* to_string(FlowStatus status) {
  switch (status) {
    case FlowStatus::Running: return "running";
    case FlowStatus::Converged: return "converged";
    case FlowStatus::MaxSteps: return "max_steps";
    case FlowStatus::Stalled: return "stalled";
    case FlowStatus::SelfIntersection: return "self_intersection_imminent";
  }
  return "unknown";
}

FlowState FlowState::start(const ClosedCurve& curve) {
  FlowState s{.curve = curve};
  s.energy = moebius_energy(curve);
  s.margin = relative_margin(curve);
  s.initial_margin = s.margin;
  s.energy_trace.push_back(s.energy);
  return s;
}

PeriodicField sobolev_gradient(const ClosedCurve& curve, double precondition) {
  if (!(precondition >= 0.0)) throw DomainError("precondition exponent must be nonnegative");
  PeriodicField g = l2_gradient(curve);
  if (precondition == 0.0) return g;
  return fourier::apply_symbol(g, [precondition](std::size_t k) {
    const double w = kTwoPi * static_cast<double>(k);
    return std::pow(1.0 + w * w, -precondition);
  });
}

FlowState flow_step(FlowState state, const FlowOptions& options) {
  options.validate();
  if (state.initial_margin <= 0.0) state.initial_margin = relative_margin(state.curve);
  if (state.margin <= 0.0) state.margin = relative_margin(state.curve);

  const double len = length(state.curve);
  const PeriodicField g = band_limit(l2_gradient(state.curve), options.band_fraction);
  state.grad_norm = len * l2_norm(g);
  if (state.grad_norm < options.grad_tol) {
    state.status = FlowStatus::Converged;
    return state;
  }
  PeriodicField d = g;
  if (options.precondition > 0.0) {
    d = fourier::apply_symbol(g, [&](std::size_t k) {
      const double w = kTwoPi * static_cast<double>(k);
      return std::pow(1.0 + w * w, -options.precondition);
    });
  }
  // Along γ − t·L²·d the directional derivative of E at t = 0 is −L²⟨g, d⟩.
  const double slope = len * len * inner(g, d);
  const double reference = std::min(state.energy, state.energy_trace.empty() ? state.energy : state.energy_trace.back());
  const double floor_margin = options.margin_fraction * state.initial_margin;

  double t = state.accepted_step > 0.0 ? 2.0 * state.accepted_step : options.step0;
  const double t_cap = options.max_displacement * state.margin / (len * max_point_norm(d));
  t = std::min({t, options.step0, t_cap});
  bool margin_blocked = false;
  for (std::size_t attempt = 0; attempt < options.max_backtracks; ++attempt, t *= options.backtrack) {
    std::optional<ClosedCurve> trial;
    double energy = 0.0;
    double margin = 0.0;
    try {
      trial.emplace(advance(state.curve, d, t * len * len, options.band_fraction));
      margin = relative_margin(*trial);
      if (!(margin >= floor_margin)) {
        margin_blocked = true;
        continue;
      }
      energy = moebius_energy(*trial);
    } catch (const Error&) {
      margin_blocked = true;
      continue;
    }
    if (!std::isfinite(energy) || !(energy < reference) || energy > reference - options.armijo * t * slope) continue;

    state.curve = std::move(*trial);
    state.energy = energy;
    state.margin = margin;
    state.accepted_step = t;
    ++state.step_count;
    state.energy_trace.push_back(energy);
    state.margin_trace.push_back(margin);
    if (state.step_count % options.reparam_interval == 0) {
      ClosedCurve re(band_limit(reparametrize_arclength(state.curve, state.curve.size()).samples(),
                                options.band_fraction));
      state.energy = moebius_energy(re);
      state.curve = std::move(re);
    }
    state.status = FlowStatus::Running;
    return state;
  }
  if (margin_blocked) {
    throw SelfIntersectionImminent("every trial step violates the injectivity-margin guard");
  }
  state.status = FlowStatus::Stalled;
  return state;
}

FlowState minimize(const ClosedCurve& curve0, const FlowOptions& options,
                   const std::function<void(const FlowState&)>& on_step) {
  options.validate();
  FlowState state = FlowState::start(
      ClosedCurve(band_limit(reparametrize_arclength(curve0, curve0.size()).samples(), options.band_fraction)));
  while (state.status == FlowStatus::Running) {
    if (state.step_count >= options.max_steps) {
      state.grad_norm = band_gradient_norm(state.curve, options.band_fraction);
      state.status = state.grad_norm < options.grad_tol ? FlowStatus::Converged : FlowStatus::MaxSteps;
      break;
    }
    try {
      FlowState next = flow_step(state, options);
      state = std::move(next);
      if (on_step && state.status == FlowStatus::Running) on_step(state);
    } catch (const SelfIntersectionImminent&) {
      state.status = FlowStatus::SelfIntersection;
    }
  }
  if (options.basis_size > 0) {
    const ClosedCurve unit = normalized_arclength(state.curve);
    const auto basis = trig_basis(unit.size(), unit.dim(), options.basis_size);
    state.el_residuals = el_residual(unit, basis.front(), basis).mode_residuals;
  }
  return state;
}

}  // namespace moebius
