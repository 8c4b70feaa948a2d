#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "moebius/curve.hpp"
#include "moebius/field.hpp"

namespace moebius::analysis {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Parameter window [lo, hi) on ℝ/ℤ; hi may exceed 1 (the arc wraps).
struct Window {
  double lo = 0.0;
  double hi = 1.0;

  static Window full() { return {}; }
  static Window ball(double center, double radius) { return {center - radius, center + radius}; }
  double measure() const { return hi - lo; }
  bool contains(double u) const;
};

struct LorentzSpec {
  double p = 2.0;
  double q = 2.0;
  Window window{};

  /// p ∈ (1,∞) with q ∈ [1,∞], or (1,1), or (∞,∞).
  bool valid() const;
};

/// Step-function rearrangement: value i occupies [i·cell, (i+1)·cell).
struct Rearrangement {
  std::vector<double> values;
  double cell = 0.0;

  double measure() const { return cell * static_cast<double>(values.size()); }
  /// f*(t), zero beyond the support.
  double operator()(double t) const;
};

Rearrangement decreasing_rearrangement(const PeriodicField& f, const Window& window = {});

double lorentz_norm(const PeriodicField& f, const LorentzSpec& spec);
double lorentz_norm(const Rearrangement& r, double p, double q);

/// H_s(a,b) = |D|^s(ab) − a|D|^s b − b|D|^s a with products formed on a
/// doubled grid.
PeriodicField commutator_h(const PeriodicField& a, const PeriodicField& b, double s);

struct Split {
  PeriodicField normal;
  /// t_i v_j − t_j v_i for each pair in `pairs`.
  std::vector<PeriodicField> tangential;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

/// Throws NotUnit if some |t(u_j)| deviates from 1 by more than 1e-8.
Split normal_tangential_split(const PeriodicField& t, const PeriodicField& v);

struct GammaScheme {
  /// Gauss nodes per s-axis.
  std::size_t s_nodes = 8;
  std::size_t w_order = 16;
  /// The cell |w| < w_min is dropped; its contribution is O(w_min²).
  double w_min = 1e-6;
};

/// Γ(u) of the critical-term lemma for an arc-length derivative field.
double gamma_term(const PeriodicField& gprime, double u, const GammaScheme& scheme = {});

struct DecaySample {
  double radius = 0.0;
  double value = 0.0;
  double center = 0.0;
};

struct MorreyProfile {
  std::vector<DecaySample> samples;
  /// Least-squares slope of log value against log radius; NaN when degenerate.
  double sigma = std::numeric_limits<double>::quiet_NaN();
  bool degenerate = false;
};

/// (2,∞) norms of f on the windows B_r(center) for every center and radius.
MorreyProfile morrey_decay_profile(const PeriodicField& f, const std::vector<double>& centers,
                                   const std::vector<double>& radii);

/// |(|D|^{1/2} γ′)(u_j)| as a scalar field.
PeriodicField half_derivative_magnitude(const ClosedCurve& curve);

struct IterationResult {
  bool holds = false;
  /// Smallest constant with b_k ≤ C̃·2^{−θk/2} on the given range.
  double c_tilde = 0.0;
  /// Constant the lemma's proof guarantees: 2(Σ_{l<m} 2^{θl/2} b_l + C′2^{−θm/2}).
  double bound = 0.0;
};

/// Smallest m meeting the smallness condition C/(2^{θ/2} − 1) · 2^{−mθ/2} < 1/4.
std::size_t iteration_minimal_m(double theta, double c);

/// Checks the hypothesis for all k with k + m inside the sequence (throws
/// HypothesisViolated at the first failing k, DomainError if ε or m violate
/// the smallness conditions) and evaluates the θ/2-decay conclusion.
IterationResult iteration_lemma_check(const std::vector<double>& b, double theta, double eps, std::size_t m, double c);

/// Runs the recursion forward from b_0..b_{m−1}, scaling each right-hand side
/// by a factor in `slack` ∈ [0,1] drawn per step (1 gives equality).
std::vector<double> iteration_sequence(std::vector<double> head, std::size_t length, double theta, double eps,
                                       std::size_t m, double c, std::uint64_t seed = 0, double slack_min = 1.0);

struct MultiplierProbe {
  double max_ratio = 0.0;
  std::size_t trials = 0;
};

/// Monte-Carlo sup of the multiplier-estimate ratio over triples in ℝ³ drawn
/// log-uniformly over six decades of scale.
MultiplierProbe multiplier_estimate_probe(double alpha, double delta, std::size_t trials,
                                          std::uint64_t seed = 20140611);

/// The ratio for one triple; 0 when x = y.
double multiplier_ratio(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& xi,
                        double alpha, double delta);

}  // namespace moebius::analysis
