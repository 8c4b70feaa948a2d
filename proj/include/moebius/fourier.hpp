#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "moebius/field.hpp"

namespace moebius::fourier {

using cplx = std::complex<double>;

/// Normalized half spectrum c_k = (1/N) Σ_j f_j e^{-2πi k j/N}, k = 0..N/2.
std::vector<cplx> forward(std::span<const double> samples);
/// Inverse of `forward` for a real signal of length n (uses c_0..c_{n/2}).
std::vector<double> inverse(std::span<const cplx> half_spectrum, std::size_t n);

/// Applies an even real symbol m(|k|) mode by mode. The Nyquist mode is
/// treated as cos(πN u) and receives m(N/2).
PeriodicField apply_symbol(const PeriodicField& f, const std::function<double(std::size_t)>& symbol);

/// Spectral derivative of the trigonometric interpolant, sampled on the grid.
/// Odd orders drop the Nyquist mode (its odd derivatives vanish at the nodes).
PeriodicField derivative(const PeriodicField& f, int order = 1);

/// Samples of the interpolant at u_j + delta.
PeriodicField shift(const PeriodicField& f, double delta);

/// Interpolant resampled on an m-point grid (zero padding for m > N,
/// spectral truncation for m < N).
PeriodicField resample(const PeriodicField& f, std::size_t m);

/// Periodic part P of an antiderivative: f = mean(f) + P', mean(P) = 0.
PeriodicField periodic_antiderivative(const PeriodicField& f);

std::vector<double> mean(const PeriodicField& f);

/// Repeated shifts of one field: the spectrum is computed once.
class Shifter {
 public:
  explicit Shifter(const PeriodicField& f);
  std::size_t size() const noexcept { return n_; }
  PeriodicField operator()(double delta) const;
  /// (f(·+w) − f)/w on the grid, formed in frequency space so that small w
  /// loses no digits to cancellation.
  PeriodicField difference_quotient(double w) const;

 private:
  std::size_t dim_, n_;
  std::vector<std::vector<cplx>> spectra_;
};

/// Evaluates the real trigonometric interpolant of a field at arbitrary
/// parameters. O(N) per evaluation for all components together.
class TrigInterpolant {
 public:
  TrigInterpolant() = default;
  explicit TrigInterpolant(const PeriodicField& f);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return n_; }

  void value(double u, std::span<double> out) const;
  void derivative(double u, std::span<double> out) const;
  /// Value and first derivative in one pass.
  void value_and_derivative(double u, std::span<double> val, std::span<double> der) const;
  double value(std::size_t component, double u) const;

 private:
  std::size_t dim_ = 0;
  std::size_t n_ = 0;
  std::vector<std::vector<cplx>> coeff_;
};

}  // namespace moebius::fourier
