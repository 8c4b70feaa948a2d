#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "moebius/field.hpp"

namespace moebius::spectral {

/// Even real symbol m(|k|) for k = 0..N/2 acting on N-point fields.
class FourierMultiplier {
 public:
  FourierMultiplier(std::size_t n, const std::function<double(std::size_t)>& symbol);

  std::size_t size() const noexcept { return n_; }
  double operator[](std::size_t k) const { return symbol_.at(k); }
  PeriodicField apply(const PeriodicField& f) const;

 private:
  std::size_t n_;
  std::vector<double> symbol_;
};

/// |D|^s with symbol (2π|k|)^s, s ∈ (0, 2].
PeriodicField frac_laplacian(const PeriodicField& f, double s);
/// I_s with symbol (2π|k|)^{−s} on nonzero modes; the mean is projected out. s ∈ (0, 1).
PeriodicField riesz_potential(const PeriodicField& f, double s);

enum class PairingWindow {
  /// Periodic image of the real-line integral: kernels Σ_n (w+n)^{-2}, Σ_n (w+n)^{-4}.
  FullLine,
  /// Literal restriction of the w-integral to [−1/2, 1/2].
  Unit,
};

/// ∫∫_{ε≤|w|≤1/2} (⟨f1′,f2′⟩ − ⟨Δf1,Δf2⟩/w²) w^{−2} dw du (with the chosen
/// window kernels). The u-integral is evaluated exactly for the
/// trigonometric interpolants; the w-integral by graded Gauss–Legendre panels.
double gagliardo_pairing(const PeriodicField& f1, const PeriodicField& f2, double eps,
                         PairingWindow window = PairingWindow::FullLine);

/// The same pairing restricted to lo ≤ |w| ≤ hi, 0 < lo < hi ≤ 1/2. Windows
/// meeting at a dyadic breakpoint share their quadrature nodes, so adjacent
/// windows add up to the joint window to rounding.
double gagliardo_window(const PeriodicField& f1, const PeriodicField& f2, double lo, double hi,
                        PairingWindow window = PairingWindow::FullLine);

/// ε → 0 limit of gagliardo_pairing by Richardson extrapolation from ε and ε/2.
double pairing_limit(const PeriodicField& f1, const PeriodicField& f2, double eps = 1e-3,
                     PairingWindow window = PairingWindow::FullLine);

/// ∫ ⟨|D|^{1/2} f1′, |D|^{1/2} f2′⟩ computed from Fourier coefficients.
double spectral_pairing(const PeriodicField& f1, const PeriodicField& f2);

struct Calibration {
  double c = 0.0;
  double spread = 0.0;
  std::vector<double> ratios;
};

/// c = spectral / integral pairing averaged over cos(2πkx), k = 1..5.
/// Throws CalibrationUnstable if the relative spread exceeds 1e-2.
Calibration calibrate_pairing_constant(PairingWindow window = PairingWindow::FullLine,
                                       std::size_t n = 64, double eps = 1e-3);

struct SeminormSpec {
  double s = 0.5;
  double p = 2.0;
  double q = 2.0;  // may be +infinity
  double eps = 0.5;
};

/// (∫_{|w|≤ε_window} ‖f(·+w) − f‖_p^q |w|^{−1−sq} dw)^{1/q}; q = ∞ takes the sup.
double besov_seminorm(const PeriodicField& f, const SeminormSpec& spec);

/// (∫∫_{|w|≤ε} |f(u+w) − f(u)|² / w² dw du)^{1/2}.
double truncated_h12_seminorm(const PeriodicField& f, double eps);

}  // namespace moebius::spectral
