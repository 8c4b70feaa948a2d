#include "moebius/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "moebius/error.hpp"

namespace moebius::fourier {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

// FFTW planning is not thread safe; execution with new-array calls is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

const Plans& plans_for(std::size_t n) {
  static std::map<std::size_t, Plans> cache;
  std::lock_guard lock(plan_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  double* in = fftw_alloc_real(n);
  fftw_complex* out = fftw_alloc_complex(n / 2 + 1);
  Plans p;
  p.r2c = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
  p.c2r = fftw_plan_dft_c2r_1d(static_cast<int>(n), out, in, FFTW_ESTIMATE);
  fftw_free(in);
  fftw_free(out);
  return cache.emplace(n, p).first->second;
}

struct RealBuf {
  explicit RealBuf(std::size_t n) : p(fftw_alloc_real(n)) {}
  ~RealBuf() { fftw_free(p); }
  RealBuf(const RealBuf&) = delete;
  RealBuf& operator=(const RealBuf&) = delete;
  double* p;
};

struct CplxBuf {
  explicit CplxBuf(std::size_t n) : p(fftw_alloc_complex(n)) {}
  ~CplxBuf() { fftw_free(p); }
  CplxBuf(const CplxBuf&) = delete;
  CplxBuf& operator=(const CplxBuf&) = delete;
  fftw_complex* p;
};

template <class Op>
PeriodicField map_spectrum(const PeriodicField& f, Op&& op) {
  const std::size_t n = f.size();
  PeriodicField out(f.dim(), n);
  for (std::size_t a = 0; a < f.dim(); ++a) {
    auto c = forward(f.component(a));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = op(k, c[k]);
    auto v = inverse(c, n);
    std::copy(v.begin(), v.end(), out.component(a).begin());
  }
  return out;
}

}  // namespace

std::vector<cplx> forward(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n < 2 || n % 2 != 0) throw InvalidInput("spectral transforms need an even sample count");
  const Plans& p = plans_for(n);
  RealBuf in(n);
  CplxBuf out(n / 2 + 1);
  std::copy(samples.begin(), samples.end(), in.p);
  fftw_execute_dft_r2c(p.r2c, in.p, out.p);
  std::vector<cplx> c(n / 2 + 1);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k <= n / 2; ++k) c[k] = cplx(out.p[k][0], out.p[k][1]) * inv_n;
  return c;
}

std::vector<double> inverse(std::span<const cplx> half_spectrum, std::size_t n) {
  if (half_spectrum.size() != n / 2 + 1) throw InvalidInput("half spectrum size mismatch");
  const Plans& p = plans_for(n);
  CplxBuf in(n / 2 + 1);
  RealBuf out(n);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    in.p[k][0] = half_spectrum[k].real();
    in.p[k][1] = half_spectrum[k].imag();
  }
  // The Nyquist and zero modes of a real signal are real.
  in.p[0][1] = 0.0;
  in.p[n / 2][1] = 0.0;
  fftw_execute_dft_c2r(p.c2r, in.p, out.p);
  return std::vector<double>(out.p, out.p + n);
}

PeriodicField apply_symbol(const PeriodicField& f, const std::function<double(std::size_t)>& symbol) {
  return map_spectrum(f, [&](std::size_t k, cplx c) { return c * symbol(k); });
}

PeriodicField derivative(const PeriodicField& f, int order) {
  if (order < 0) throw DomainError("derivative order must be nonnegative");
  const std::size_t nyq = f.size() / 2;
  return map_spectrum(f, [&](std::size_t k, cplx c) {
    if (k == nyq && order % 2 == 1) return cplx(0.0, 0.0);
    const cplx ik(0.0, kTwoPi * static_cast<double>(k));
    cplx m(1.0, 0.0);
    for (int i = 0; i < order; ++i) m *= ik;
    if (k == nyq) return c * m.real();
    return c * m;
  });
}

PeriodicField shift(const PeriodicField& f, double delta) {
  const std::size_t n = f.size();
  const std::size_t nyq = n / 2;
  return map_spectrum(f, [&](std::size_t k, cplx c) {
    const double phase = kTwoPi * static_cast<double>(k) * delta;
    if (k == nyq) return c * std::cos(phase);
    return c * std::polar(1.0, phase);
  });
}

PeriodicField resample(const PeriodicField& f, std::size_t m) {
  const std::size_t n = f.size();
  if (m == n) return f;
  if (m < 2 || m % 2 != 0) throw InvalidInput("resample target must be even");
  PeriodicField out(f.dim(), m);
  for (std::size_t a = 0; a < f.dim(); ++a) {
    auto c = forward(f.component(a));
    std::vector<cplx> d(m / 2 + 1, cplx(0.0, 0.0));
    if (m > n) {
      for (std::size_t k = 0; k < n / 2; ++k) d[k] = c[k];
      // Split the Nyquist cosine between ±N/2, which are distinct modes on the finer grid.
      d[n / 2] = 0.5 * c[n / 2].real();
    } else {
      for (std::size_t k = 0; k < m / 2; ++k) d[k] = c[k];
      // Fold ±m/2 onto the coarse Nyquist cosine.
      d[m / 2] = 2.0 * c[m / 2].real();
    }
    auto v = inverse(d, m);
    std::copy(v.begin(), v.end(), out.component(a).begin());
  }
  return out;
}

PeriodicField periodic_antiderivative(const PeriodicField& f) {
  const std::size_t nyq = f.size() / 2;
  return map_spectrum(f, [&](std::size_t k, cplx c) {
    if (k == 0 || k == nyq) return cplx(0.0, 0.0);
    return c / cplx(0.0, kTwoPi * static_cast<double>(k));
  });
}

std::vector<double> mean(const PeriodicField& f) {
  std::vector<double> m(f.dim(), 0.0);
  for (std::size_t a = 0; a < f.dim(); ++a) {
    double s = 0.0;
    for (double v : f.component(a)) s += v;
    m[a] = s / static_cast<double>(f.size());
  }
  return m;
}

Shifter::Shifter(const PeriodicField& f) : dim_(f.dim()), n_(f.size()) {
  spectra_.reserve(dim_);
  for (std::size_t a = 0; a < dim_; ++a) spectra_.push_back(forward(f.component(a)));
}

PeriodicField Shifter::operator()(double delta) const {
  const std::size_t nyq = n_ / 2;
  PeriodicField out(dim_, n_);
  std::vector<cplx> phase(nyq + 1);
  for (std::size_t k = 0; k <= nyq; ++k) phase[k] = std::polar(1.0, kTwoPi * static_cast<double>(k) * delta);
  phase[nyq] = cplx(std::cos(kTwoPi * static_cast<double>(nyq) * delta), 0.0);
  std::vector<cplx> c(nyq + 1);
  for (std::size_t a = 0; a < dim_; ++a) {
    for (std::size_t k = 0; k <= nyq; ++k) c[k] = spectra_[a][k] * phase[k];
    auto v = inverse(c, n_);
    std::copy(v.begin(), v.end(), out.component(a).begin());
  }
  return out;
}

PeriodicField Shifter::difference_quotient(double w) const {
  const std::size_t nyq = n_ / 2;
  PeriodicField out(dim_, n_);
  std::vector<cplx> mult(nyq + 1);
  mult[0] = 0.0;
  for (std::size_t k = 1; k < nyq; ++k) {
    const double half = std::numbers::pi * static_cast<double>(k) * w;
    mult[k] = std::polar(2.0 * std::sin(half) / w, half + 0.5 * std::numbers::pi);
  }
  const double hn = 0.5 * std::numbers::pi * static_cast<double>(n_) * w;
  mult[nyq] = cplx(-2.0 * std::sin(hn) * std::sin(hn) / w, 0.0);
  std::vector<cplx> c(nyq + 1);
  for (std::size_t a = 0; a < dim_; ++a) {
    for (std::size_t k = 0; k <= nyq; ++k) c[k] = spectra_[a][k] * mult[k];
    auto v = inverse(c, n_);
    std::copy(v.begin(), v.end(), out.component(a).begin());
  }
  return out;
}

TrigInterpolant::TrigInterpolant(const PeriodicField& f) : dim_(f.dim()), n_(f.size()) {
  coeff_.reserve(dim_);
  for (std::size_t a = 0; a < dim_; ++a) coeff_.push_back(forward(f.component(a)));
}

void TrigInterpolant::value_and_derivative(double u, std::span<double> val,
                                           std::span<double> der) const {
  u -= std::floor(u);
  const std::size_t nyq = n_ / 2;
  for (std::size_t a = 0; a < dim_; ++a) {
    if (!val.empty()) val[a] = coeff_[a][0].real();
    if (!der.empty()) der[a] = 0.0;
  }
  const cplx z = std::polar(1.0, kTwoPi * u);
  cplx zk(1.0, 0.0);
  for (std::size_t k = 1; k < nyq; ++k) {
    // Reseed the running power periodically to bound accumulated rounding.
    zk = (k % 64 == 0) ? std::polar(1.0, kTwoPi * u * static_cast<double>(k)) : zk * z;
    const double kk = kTwoPi * static_cast<double>(k);
    for (std::size_t a = 0; a < dim_; ++a) {
      const cplx t = coeff_[a][k] * zk;
      if (!val.empty()) val[a] += 2.0 * t.real();
      if (!der.empty()) der[a] -= 2.0 * kk * t.imag();
    }
  }
  const double arg = std::numbers::pi * static_cast<double>(n_) * u;
  const double cn = std::cos(arg), sn = std::sin(arg);
  for (std::size_t a = 0; a < dim_; ++a) {
    const double c = coeff_[a][nyq].real();
    if (!val.empty()) val[a] += c * cn;
    if (!der.empty()) der[a] -= c * std::numbers::pi * static_cast<double>(n_) * sn;
  }
}

void TrigInterpolant::value(double u, std::span<double> out) const {
  value_and_derivative(u, out, {});
}

void TrigInterpolant::derivative(double u, std::span<double> out) const {
  value_and_derivative(u, {}, out);
}

double TrigInterpolant::value(std::size_t component, double u) const {
  std::vector<double> v(dim_);
  value(u, v);
  return v[component];
}

}  // namespace moebius::fourier
