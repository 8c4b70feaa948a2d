#include "moebius/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "moebius/error.hpp"
#include "moebius/kernels.hpp"
#include "moebius/parallel.hpp"

namespace moebius {
namespace {

PeriodicField speed_of(const PeriodicField& derivative) {
  PeriodicField s(1, derivative.size());
  for (std::size_t j = 0; j < derivative.size(); ++j) {
    double q = 0.0;
    for (std::size_t a = 0; a < derivative.dim(); ++a) q += derivative(a, j) * derivative(a, j);
    s(0, j) = std::sqrt(q);
  }
  return s;
}

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

std::vector<const double*> row_pointers(const std::vector<std::vector<double>>& comps, std::size_t offset) {
  std::vector<const double*> p(comps.size());
  for (std::size_t a = 0; a < comps.size(); ++a) p[a] = comps[a].data() + offset;
  return p;
}

double reduce_min(const std::vector<double>& v) {
  double m = std::numeric_limits<double>::infinity();
  for (double x : v) m = std::min(m, x);
  return m;
}

}  // namespace

std::vector<std::vector<double>> doubled_components(const PeriodicField& f) {
  std::vector<std::vector<double>> out(f.dim(), std::vector<double>(2 * f.size()));
  for (std::size_t a = 0; a < f.dim(); ++a) {
    auto c = f.component(a);
    std::copy(c.begin(), c.end(), out[a].begin());
    std::copy(c.begin(), c.end(), out[a].begin() + static_cast<std::ptrdiff_t>(f.size()));
  }
  return out;
}

ArcLength::ArcLength(const ClosedCurve& curve) {
  const CurveGeometry g = geometry(curve);
  *this = ArcLength(g.speed, g.length);
}

ArcLength::ArcLength(const PeriodicField& speed, double length)
    : length_(length), periodic_(fourier::periodic_antiderivative(speed)) {
  offset_ = periodic_.value(0, 0.0);
}

double ArcLength::operator()(double u) const {
  const double fl = std::floor(u);
  return length_ * u + periodic_.value(0, u - fl) - offset_;
}

double ArcLength::intrinsic(double u, double w) const {
  const double a = std::abs(arc(u, w));
  return std::min(a, length_ - a);
}

double ArcLength::inverse(double target) const {
  if (target <= 0.0) return 0.0;
  if (target >= length_) return 1.0;
  double lo = 0.0, hi = 1.0;
  double u = target / length_;
  double val[1], der[1];
  for (int it = 0; it < 200; ++it) {
    periodic_.value_and_derivative(u, val, der);
    const double f = length_ * u + val[0] - offset_ - target;
    const double df = length_ + der[0];
    if (f > 0.0) hi = u; else lo = u;
    double next = u - f / df;
    if (!(df > 0.0) || next <= lo || next >= hi) next = 0.5 * (lo + hi);
    const double step = std::abs(next - u);
    u = next;
    if (step < 1e-15 || hi - lo < 1e-15) break;
  }
  return u;
}

Point evaluate(const ClosedCurve& curve, double u) {
  fourier::TrigInterpolant f(curve.samples());
  Point p(curve.dim());
  f.value(u, p);
  return p;
}

CurveGeometry geometry(const ClosedCurve& curve, const Thresholds& th) {
  CurveGeometry g;
  g.derivative = fourier::derivative(curve.samples());
  g.speed = speed_of(g.derivative);
  const auto sp = g.speed.component(0);
  g.length = mean_of(sp);
  const double min_speed = *std::min_element(sp.begin(), sp.end());
  if (!(g.length > 0.0) || min_speed < th.min_relative_speed * g.length)
    throw DegenerateCurve("speed vanishes (min " + std::to_string(min_speed) + ")");
  const PeriodicField p = fourier::periodic_antiderivative(g.speed);
  const std::size_t n = curve.size();
  g.cumulative_arclength.resize(n + 1);
  for (std::size_t j = 0; j < n; ++j)
    g.cumulative_arclength[j] = g.length * static_cast<double>(j) / static_cast<double>(n) + p(0, j) - p(0, 0);
  g.cumulative_arclength[n] = g.length;
  return g;
}

double length(const ClosedCurve& curve) { return geometry(curve).length; }

double intrinsic_distance(const ClosedCurve& curve, double u, double w) {
  if (!(std::abs(w) <= 0.5)) throw DomainError("|w| must be at most 1/2");
  return ArcLength(curve).intrinsic(u, w);
}

double bilipschitz_constant(const ClosedCurve& curve, const Thresholds& th) {
  const CurveGeometry g = geometry(curve, th);
  const std::size_t n = curve.size();
  const auto& s = g.cumulative_arclength;
  const auto comps = doubled_components(curve.samples());
  std::vector<double> inv_w2(n - 1), inv_w(n - 1);
  for (std::size_t m = 1; m < n; ++m) {
    const double w = static_cast<double>(std::min(m, n - m)) / static_cast<double>(n);
    inv_w[m - 1] = 1.0 / w;
    inv_w2[m - 1] = 1.0 / (w * w);
  }
  const auto& k = kernels::active();
  std::vector<double> row(n);
  parallel_for(0, n, [&](std::size_t j) {
    const auto tgt = row_pointers(comps, j + 1);
    const Point base = curve.point(j);
    const double chord2 = k.min_scaled_row(tgt.data(), base.data(), curve.dim(), inv_w2.data(), n - 1);
    double best = std::sqrt(chord2);
    for (std::size_t m = 1; m < n; ++m) {
      const std::size_t i = j + m;
      const double si = i < n ? s[i] : s[i - n] + g.length;
      const double a = si - s[j];
      best = std::min(best, std::min(a, g.length - a) * inv_w[m - 1]);
    }
    row[j] = best;
  });
  const double c = reduce_min(row);
  if (c < th.min_bilipschitz) throw DegenerateCurve("bi-Lipschitz constant " + std::to_string(c) + " below threshold");
  return c;
}

ClosedCurve reparametrize_arclength(const ClosedCurve& curve, std::size_t n_out, const Thresholds& th) {
  if (n_out == 0) n_out = curve.size();
  const CurveGeometry g = geometry(curve, th);
  const ArcLength s(g.speed, g.length);
  const fourier::TrigInterpolant f(curve.samples());
  PeriodicField out(curve.dim(), n_out);
  parallel_for(0, n_out, [&](std::size_t k) {
    const double u = s.inverse(g.length * static_cast<double>(k) / static_cast<double>(n_out));
    Point p(curve.dim());
    f.value(u, p);
    for (std::size_t a = 0; a < curve.dim(); ++a) out(a, k) = p[a];
  });
  return ClosedCurve(std::move(out));
}

double injectivity_margin(const ClosedCurve& curve) {
  const CurveGeometry g = geometry(curve);
  const std::size_t n = curve.size();
  const auto& s = g.cumulative_arclength;
  const auto comps = doubled_components(curve.samples());
  const std::vector<double> ones(n, 1.0);
  const auto& k = kernels::active();
  std::vector<double> row(n, std::numeric_limits<double>::infinity());
  parallel_for(0, n, [&](std::size_t j) {
    std::size_t lo = n, hi = 0;
    for (std::size_t m = 1; m < n; ++m) {
      const std::size_t i = j + m;
      const double a = (i < n ? s[i] : s[i - n] + g.length) - s[j];
      if (std::min(a, g.length - a) >= 0.125 * g.length) {
        lo = std::min(lo, m);
        hi = m;
      }
    }
    if (lo > hi) return;
    const auto tgt = row_pointers(comps, j + lo);
    const Point base = curve.point(j);
    row[j] = std::sqrt(k.min_scaled_row(tgt.data(), base.data(), curve.dim(), ones.data(), hi - lo + 1));
  });
  const double m = reduce_min(row);
  return std::isfinite(m) ? m : 0.0;
}

PeriodicField curvature(const ClosedCurve& curve) {
  const PeriodicField d1 = fourier::derivative(curve.samples(), 1);
  const PeriodicField d2 = fourier::derivative(curve.samples(), 2);
  PeriodicField k(1, curve.size());
  for (std::size_t j = 0; j < curve.size(); ++j) {
    double a = 0.0, b = 0.0, c = 0.0;
    for (std::size_t i = 0; i < curve.dim(); ++i) {
      a += d1(i, j) * d1(i, j);
      b += d2(i, j) * d2(i, j);
      c += d1(i, j) * d2(i, j);
    }
    k(0, j) = std::sqrt(std::max(0.0, a * b - c * c)) / std::pow(a, 1.5);
  }
  return k;
}

double arclength_defect(const ClosedCurve& curve) {
  const PeriodicField sp = speed_of(fourier::derivative(curve.samples()));
  const double len = mean_of(sp.component(0));
  double worst = 0.0;
  for (double v : sp.component(0)) worst = std::max(worst, std::abs(v / len - 1.0));
  return worst;
}

bool is_arclength(const ClosedCurve& curve, double tol) { return arclength_defect(curve) <= tol; }

}  // namespace moebius
