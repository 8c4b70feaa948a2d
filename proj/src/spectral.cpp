#include "moebius/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "moebius/error.hpp"
#include "moebius/fourier.hpp"
#include "moebius/quadrature.hpp"

namespace moebius::spectral {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr std::size_t kOrder = 16;

void check_same_grid(const PeriodicField& a, const PeriodicField& b) {
  if (a.dim() != b.dim() || a.size() != b.size()) throw InvalidInput("fields live on different grids");
}

/// ρ_k with ∫⟨f1,f2⟩ = Σ_k ρ_k restricted to mode |k| of the interpolants.
std::vector<double> cross_power(const PeriodicField& f1, const PeriodicField& f2) {
  const std::size_t n = f1.size(), nyq = n / 2;
  std::vector<double> rho(nyq + 1, 0.0);
  for (std::size_t a = 0; a < f1.dim(); ++a) {
    const auto c1 = fourier::forward(f1.component(a));
    const auto c2 = fourier::forward(f2.component(a));
    for (std::size_t k = 1; k < nyq; ++k) rho[k] += 2.0 * (c1[k] * std::conj(c2[k])).real();
    rho[nyq] += 0.5 * c1[nyq].real() * c2[nyq].real();
  }
  return rho;
}

/// (x² − sin²x)/x⁴, stable near 0.
double g_small(double x) {
  if (std::abs(x) < 2e-2) {
    const double x2 = x * x;
    return 1.0 / 3.0 - x2 * (2.0 / 45.0) + x2 * x2 / 315.0;
  }
  const double s = std::sin(x);
  return (x * x - s * s) / (x * x * x * x);
}

/// Pairing integrand at w > 0 (one side), summed over modes.
double pairing_integrand(const std::vector<double>& rho, double w, PairingWindow window) {
  double k2c = 0.0, k4c = 0.0;
  if (window == PairingWindow::FullLine) {
    const double s = std::sin(kPi * w);
    const double s2 = s * s;
    k2c = kPi * kPi / s2 - 1.0 / (w * w);
    k4c = kPi * kPi * kPi * kPi * (1.0 / (s2 * s2) - 2.0 / (3.0 * s2)) - 1.0 / (w * w * w * w);
  }
  double total = 0.0;
  for (std::size_t k = 1; k < rho.size(); ++k) {
    if (rho[k] == 0.0) continue;
    const double pk = kPi * static_cast<double>(k);
    const double pk2 = pk * pk;
    double v = 4.0 * pk2 * pk2 * g_small(pk * w);
    if (window == PairingWindow::FullLine) {
      const double sn = std::sin(pk * w);
      v += 4.0 * pk2 * k2c - 4.0 * sn * sn * k4c;
    }
    total += rho[k] * v;
  }
  return total;
}

double panel_width(std::size_t n) { return std::min(0.125, 4.0 / static_cast<double>(n)); }

}  // namespace

FourierMultiplier::FourierMultiplier(std::size_t n, const std::function<double(std::size_t)>& symbol)
    : n_(n), symbol_(n / 2 + 1) {
  for (std::size_t k = 0; k <= n / 2; ++k) {
    symbol_[k] = symbol(k);
    if (!std::isfinite(symbol_[k])) throw InvalidInput("multiplier symbol must be finite");
  }
}

PeriodicField FourierMultiplier::apply(const PeriodicField& f) const {
  if (f.size() != n_) throw InvalidInput("multiplier grid mismatch");
  return fourier::apply_symbol(f, [this](std::size_t k) { return symbol_[k]; });
}

PeriodicField frac_laplacian(const PeriodicField& f, double s) {
  if (!(s > 0.0 && s <= 2.0)) throw DomainError("frac_laplacian needs s in (0, 2]");
  return FourierMultiplier(f.size(), [s](std::size_t k) {
           return k == 0 ? 0.0 : std::pow(kTwoPi * static_cast<double>(k), s);
         }).apply(f);
}

PeriodicField riesz_potential(const PeriodicField& f, double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("riesz_potential needs s in (0, 1)");
  return FourierMultiplier(f.size(), [s](std::size_t k) {
           return k == 0 ? 0.0 : std::pow(kTwoPi * static_cast<double>(k), -s);
         }).apply(f);
}

double gagliardo_pairing(const PeriodicField& f1, const PeriodicField& f2, double eps, PairingWindow window) {
  check_same_grid(f1, f2);
  if (!(eps > 0.0 && eps < 0.5)) throw DomainError("pairing cutoff must lie in (0, 1/2)");
  const auto rho = cross_power(f1, f2);
  const auto rule = quad::dyadic_window(eps, 0.5, kOrder, panel_width(f1.size()));
  double s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * pairing_integrand(rho, rule.nodes[i], window);
  return 2.0 * s;
}

double gagliardo_window(const PeriodicField& f1, const PeriodicField& f2, double lo, double hi,
                        PairingWindow window) {
  check_same_grid(f1, f2);
  if (!(lo > 0.0 && lo < hi && hi <= 0.5)) throw DomainError("pairing window must satisfy 0 < lo < hi <= 1/2");
  const auto rho = cross_power(f1, f2);
  const auto rule = quad::dyadic_window(lo, hi, kOrder, panel_width(f1.size()));
  double s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * pairing_integrand(rho, rule.nodes[i], window);
  return 2.0 * s;
}

double pairing_limit(const PeriodicField& f1, const PeriodicField& f2, double eps, PairingWindow window) {
  const double a = gagliardo_pairing(f1, f2, eps, window);
  const double b = gagliardo_pairing(f1, f2, 0.5 * eps, window);
  return 2.0 * b - a;
}

double spectral_pairing(const PeriodicField& f1, const PeriodicField& f2) {
  check_same_grid(f1, f2);
  const auto rho = cross_power(f1, f2);
  double s = 0.0;
  for (std::size_t k = 1; k < rho.size(); ++k) s += rho[k] * std::pow(kTwoPi * static_cast<double>(k), 3);
  return s;
}

Calibration calibrate_pairing_constant(PairingWindow window, std::size_t n, double eps) {
  Calibration cal;
  for (int k = 1; k <= 5; ++k) {
    const auto f = PeriodicField::sample(1, n, [k](double u, std::size_t) { return std::cos(kTwoPi * k * u); });
    cal.ratios.push_back(spectral_pairing(f, f) / pairing_limit(f, f, eps, window));
  }
  double sum = 0.0;
  for (double r : cal.ratios) sum += r;
  cal.c = sum / static_cast<double>(cal.ratios.size());
  const auto [lo, hi] = std::minmax_element(cal.ratios.begin(), cal.ratios.end());
  cal.spread = (*hi - *lo) / std::abs(cal.c);
  if (!(cal.spread <= 1e-2)) throw CalibrationUnstable("pairing ratio spread " + std::to_string(cal.spread));
  return cal;
}

double besov_seminorm(const PeriodicField& f, const SeminormSpec& spec) {
  const bool q_inf = std::isinf(spec.q);
  if (!(spec.s > 0.0 && spec.s < 1.0) || !(spec.p >= 1.0) || !(q_inf || spec.q >= 1.0) ||
      !(spec.q > 0.0) || !(spec.eps > 0.0 && spec.eps <= 0.5))
    throw DomainError("Besov parameters out of range");
  const std::size_t n = f.size();
  auto diff_norm = [&](double w) {
    const PeriodicField d = fourier::shift(f, w) - f;
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double q = 0.0;
      for (std::size_t a = 0; a < f.dim(); ++a) q += d(a, j) * d(a, j);
      acc += std::pow(std::sqrt(q), spec.p);
    }
    return std::pow(acc / static_cast<double>(n), 1.0 / spec.p);
  };
  const double w_min = 1.0 / (8.0 * static_cast<double>(n));
  const double top = spec.eps;
  const auto outer = quad::dyadic_window(std::min(w_min, top), top, kOrder, panel_width(n));
  if (q_inf) {
    double best = 0.0;
    for (double w : outer.nodes) best = std::max(best, diff_norm(w) / std::pow(w, spec.s));
    return best;
  }
  auto integrand = [&](double w) { return std::pow(diff_norm(w), spec.q) / std::pow(w, 1.0 + spec.s * spec.q); };
  double coarse = 0.0;
  for (std::size_t i = 0; i < outer.size(); ++i) coarse += outer.weights[i] * integrand(outer.nodes[i]);
  // I(w) = ∫_w^top; I(0) − I(w) behaves like a w^β + b w^{β+2} on smooth
  // data (‖Δ_w f‖_p is even in w), β = q(1 − s). Two Richardson steps remove both.
  double level[3] = {coarse, 0.0, 0.0};
  for (int l = 1; l < 3; ++l) {
    const double hi = std::ldexp(w_min, 1 - l);
    const auto inner = quad::composite(0.5 * hi, hi, kOrder);
    level[l] = level[l - 1];
    for (std::size_t i = 0; i < inner.size(); ++i) level[l] += inner.weights[i] * integrand(inner.nodes[i]);
  }
  const double beta = spec.q * (1.0 - spec.s);
  const double r1 = std::pow(2.0, beta), r2 = std::pow(2.0, beta + 2.0);
  const double a1 = level[1] + (level[1] - level[0]) / (r1 - 1.0);
  const double a2 = level[2] + (level[2] - level[1]) / (r1 - 1.0);
  const double total = a2 + (a2 - a1) / (r2 - 1.0);
  return std::pow(std::max(0.0, 2.0 * total), 1.0 / spec.q);
}

double truncated_h12_seminorm(const PeriodicField& f, double eps) {
  if (!(eps > 0.0 && eps <= 0.5)) throw DomainError("truncation must lie in (0, 1/2]");
  const auto rho = cross_power(f, f);
  const std::size_t panels = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(eps / panel_width(f.size()))));
  const auto rule = quad::composite(0.0, eps, kOrder, panels);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double w = rule.nodes[i];
    double v = 0.0;
    for (std::size_t k = 1; k < rho.size(); ++k) {
      const double x = kPi * static_cast<double>(k) * w;
      const double sinc = std::sin(x) / w;
      v += rho[k] * 4.0 * sinc * sinc;
    }
    s += rule.weights[i] * v;
  }
  return std::sqrt(2.0 * s);
}

}  // namespace moebius::spectral
