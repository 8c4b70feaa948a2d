#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "moebius/curve.hpp"
#include "moebius/energy.hpp"
#include "moebius/field.hpp"

namespace moebius {

struct ELReport {
  double q_value = 0.0;
  double t1_value = 0.0;
  double t2_value = 0.0;
  /// q_value − t1_value − t2_value.
  double residual = 0.0;
  std::vector<double> mode_residuals;
};

/// δE(γ; h) for an arc-length curve. Throws NotArcLength otherwise.
double first_variation(const ClosedCurve& curve, const TestField& h, const QuadratureScheme& scheme = {});

/// δE(γ; h) in an arbitrary regular parametrization, including the variation
/// of the intrinsic distance.
double first_variation_general(const ClosedCurve& curve, const TestField& h, const QuadratureScheme& scheme = {});

/// d/dτ d_{γ+τh}(u, u+w) at τ = 0.
double intrinsic_distance_variation(const ClosedCurve& curve, const TestField& h, double u, double w);

/// Q_ε(γ, h) over ε ≤ |w| ≤ 1/2, ε ∈ (0, 1/2).
double q_form(const ClosedCurve& curve, const TestField& h, double eps);
/// Q restricted to lo ≤ |w| ≤ hi.
double q_window(const ClosedCurve& curve, const TestField& h, double lo, double hi);
double q_limit(const ClosedCurve& curve, const TestField& h, const QuadratureScheme& scheme = {});
double t1_form(const ClosedCurve& curve, const TestField& h, const QuadratureScheme& scheme = {});
double t2_form(const ClosedCurve& curve, const TestField& h, const QuadratureScheme& scheme = {});

ELReport el_residual(const ClosedCurve& curve, const TestField& h, std::span<const TestField> basis = {},
                     const QuadratureScheme& scheme = {});

/// G^α(z) = (1 − |z|^α) / (2|z|^α (1 − |z|²)).
double g_alpha(std::span<const double> z, double alpha);
double g_alpha_radial(double r, double alpha);

struct TAlphaParams {
  double alpha = 2.0;
  double s1 = 0.0, s2 = 0.0, tau1 = 0.0, tau2 = 1.0;
};

/// T^α_{s1,s2,τ1,τ2}(h) for an arc-length curve.
double t_alpha_op(const ClosedCurve& curve, const TestField& h, const TAlphaParams& params,
                  const QuadratureScheme& scheme = {});

/// −∬ T²_{0,0,τ1,τ2} dτ1 dτ2, evaluated with a tensor Gauss grid in (τ1, τ2).
double t1_via_t_alpha(const ClosedCurve& curve, const TestField& h, const QuadratureScheme& scheme = {});
/// ∬∬ T⁴_{s1,s2,τ1,τ2}, evaluated with tensor Gauss grids.
double t2_via_t_alpha(const ClosedCurve& curve, const TestField& h, const QuadratureScheme& scheme = {});

/// Unit-norm trigonometric fields e_a·√2 cos/sin(2πku) (and e_a for k = 0),
/// ordered k = 0, cos 1, sin 1, cos 2, … within each axis; basis_size fields per axis.
std::vector<TestField> trig_basis(std::size_t n, std::size_t dim, std::size_t basis_size);

/// Normal modes √2 cos(2πku)ν(u), √2 sin(2πku)ν(u), k = 1..k_max, of a planar
/// curve, normalized in the grid L² norm.
std::vector<TestField> normal_mode_basis(const ClosedCurve& curve, std::size_t k_max);

/// First variations against trig_basis(N, dim, basis_size).
std::vector<double> gradient_vector(const ClosedCurve& curve, std::size_t basis_size,
                                    const QuadratureScheme& scheme = {});

/// Grid L² gradient G with (1/N)Σ_j ⟨G_j, h_j⟩ = δE(γ; h). Curves that are not
/// arc-length are reparametrized and the gradient pulled back.
PeriodicField l2_gradient(const ClosedCurve& curve);

}  // namespace moebius
