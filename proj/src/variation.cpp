#include "moebius/variation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include <boost/math/special_functions/zeta.hpp>

#include "moebius/error.hpp"
#include "moebius/fourier.hpp"
#include "moebius/kernels.hpp"
#include "moebius/parallel.hpp"
#include "moebius/quadrature.hpp"
#include "moebius/spectral.hpp"

namespace moebius {
namespace {

using fourier::cplx;
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kOrder = 16;

double panel_width(std::size_t n) { return std::min(0.125, 4.0 / static_cast<double>(n)); }

double dot(const PeriodicField& f, const PeriodicField& g, std::size_t j) {
  double s = 0.0;
  for (std::size_t a = 0; a < f.dim(); ++a) s += f(a, j) * g(a, j);
  return s;
}

void check_grid(const ClosedCurve& curve, const TestField& h) {
  if (h.field.dim() != curve.dim() || h.field.size() != curve.size() || h.derivative.size() != curve.size())
    throw InvalidInput("test field does not match the curve grid");
}

/// Σ_{n≠0} (w+n)^{-4} for |w| ≤ 1/2 by its Taylor series in w².
double r4(double w) {
  static const std::vector<double> coeff = [] {
    std::vector<double> c;
    for (int j = 0; j < 60; ++j) {
      const double b = (2.0 * j + 3) * (2.0 * j + 2) * (2.0 * j + 1) / 6.0;
      c.push_back(2.0 * b * boost::math::zeta(2.0 * j + 4.0));
    }
    return c;
  }();
  const double w2 = w * w;
  double s = 0.0;
  for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) s = s * w2 + *it;
  return s;
}

/// M_k = ∫_{-1/2}^{1/2} 4 sin²(πkw) Σ_{n≠0}(w+n)^{-4} dw for k = 0..n/2.
const std::vector<double>& r4_moments(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::vector<double>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  const quad::Rule rule = quad::composite(0.0, 0.5, kOrder, n / 4 + 4);
  std::vector<double> vals(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) vals[i] = rule.weights[i] * r4(rule.nodes[i]);
  std::vector<double> m(n / 2 + 1, 0.0);
  for (std::size_t k = 1; k <= n / 2; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double sn = std::sin(kPi * static_cast<double>(k) * rule.nodes[i]);
      s += vals[i] * 4.0 * sn * sn;
    }
    m[k] = 2.0 * s;
  }
  return cache.emplace(n, std::move(m)).first->second;
}

/// ρ_k with ∫⟨Δf1, Δf2⟩ du = Σ_k ρ_k · 4 sin²(πkw).
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

struct UnitPair {
  PeriodicField gamma, h;
};

/// γ/ℒ and h/ℒ on n_w points; the curve must be arc-length.
UnitPair unit_pair(const ClosedCurve& curve, const TestField& h, const QuadratureScheme& scheme) {
  check_grid(curve, h);
  const QuadratureScheme s = scheme.resolved(curve);
  if (!is_arclength(curve, s.thresholds.arclength_tolerance))
    throw NotArcLength("curve is not parametrized proportionally to arclength");
  const double len = length(curve);
  return {fourier::resample((1.0 / len) * curve.samples(), s.n_w), fourier::resample((1.0 / len) * h.field, s.n_w)};
}

struct Decomposition {
  double half_variation = 0.0;  // δE/2
  double q = 0.0, t1 = 0.0, t2 = 0.0;
};

/// Midpoint rule in w: nodes (m + 1/2)/n over a full period, so they come in
/// ±w pairs and the odd 1/w part of each integrand cancels exactly. Parts of
/// the integrands that are not periodic in w are split off against the
/// periodic kernels K2 = Σ(w+n)^{-2}, K4 = Σ(w+n)^{-4} and integrated exactly.
Decomposition decompose(const UnitPair& p) {
  const std::size_t n = p.gamma.size(), dim = p.gamma.dim();
  const double nn = static_cast<double>(n);
  const PeriodicField gp = fourier::shift(p.gamma, 0.5 / nn);
  const PeriodicField hp = fourier::shift(p.h, 0.5 / nn);
  const PeriodicField dg = fourier::derivative(p.gamma, 1);
  const PeriodicField dh = fourier::derivative(p.h, 1);
  const auto g2 = doubled_components(gp);
  const auto h2 = doubled_components(hp);

  std::vector<double> k4(n);
  double k2_sum = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    const double s = std::sin(kPi * (static_cast<double>(m) + 0.5) / nn);
    const double c = kPi * kPi / (s * s);
    k2_sum += c;
    k4[m] = c * c - (2.0 / 3.0) * kPi * kPi * c;
  }

  struct Row {
    double half, qp, a1, b1, a;
  };
  std::vector<Row> rows(n);
  const auto& kern = kernels::active();
  parallel_for(0, n, [&](std::size_t j) {
    std::vector<const double*> gt(dim), ht(dim);
    for (std::size_t a = 0; a < dim; ++a) {
      gt[a] = g2[a].data() + j;
      ht[a] = h2[a].data() + j;
    }
    const Point gb = p.gamma.point(j), hb = p.h.point(j);
    const kernels::VariationSums s = kern.variation_row(gt.data(), gb.data(), ht.data(), hb.data(), dim, k4.data(), n);
    const double a = dot(dg, dh, j);
    rows[j] = {a * s.inv2 - s.dot4, a * k2_sum - s.dotw4, a * (s.inv2 - k2_sum), s.dot4 - s.dotw4, a};
  });

  auto total = [&](double Row::*field, double scale) {
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = rows[j].*field;
    return pairwise_sum(v) * scale;
  };
  const double w2 = 1.0 / (nn * nn);
  const double abar = total(&Row::a, 1.0 / nn);
  const auto rho = cross_power(p.gamma, p.h);
  const auto& moments = r4_moments(n);
  double corr = 0.0;
  for (std::size_t k = 1; k < rho.size(); ++k) corr += rho[k] * moments[k];

  Decomposition d;
  d.half_variation = total(&Row::half, w2);
  // ∫_{-1/2}^{1/2} (K2 − 1/w²) dw = 4.
  d.q = total(&Row::qp, w2) - 4.0 * abar + corr;
  d.t1 = -total(&Row::a1, w2) - 4.0 * abar;
  d.t2 = total(&Row::b1, w2) + corr;
  return d;
}

/// Stacked spectra evaluated at (u, w) pairs: difference quotients of some
/// fields and point values of others, sharing the phase recursions.
class PairEvaluator {
 public:
  PairEvaluator(const std::vector<const PeriodicField*>& quotient_fields, const PeriodicField& value_field)
      : n_(value_field.size()) {
    for (const PeriodicField* f : quotient_fields)
      for (std::size_t a = 0; a < f->dim(); ++a) dq_.push_back(fourier::forward(f->component(a)));
    for (std::size_t a = 0; a < value_field.dim(); ++a) val_.push_back(fourier::forward(value_field.component(a)));
  }

  std::size_t quotient_count() const { return dq_.size(); }

  void eval(double u, double w, std::span<double> quotients, std::span<double> values) const {
    const std::size_t nyq = n_ / 2;
    const cplx step_mid = std::polar(1.0, kTwoPi * (u + 0.5 * w));
    const cplx step_end = std::polar(1.0, kTwoPi * (u + w));
    cplx zm(1.0, 0.0), ze(1.0, 0.0);
    std::fill(quotients.begin(), quotients.end(), 0.0);
    for (std::size_t a = 0; a < val_.size(); ++a) values[a] = val_[a][0].real();
    for (std::size_t k = 1; k < nyq; ++k) {
      zm *= step_mid;
      ze *= step_end;
      // (e^{2πikw} − 1)/w = e^{πikw} · 2i sin(πkw)/w
      const cplx mult = zm * cplx(0.0, 2.0 * std::sin(kPi * static_cast<double>(k) * w) / w);
      for (std::size_t c = 0; c < dq_.size(); ++c) quotients[c] += 2.0 * (dq_[c][k] * mult).real();
      for (std::size_t c = 0; c < val_.size(); ++c) values[c] += 2.0 * (val_[c][k] * ze).real();
    }
    const double nq = static_cast<double>(n_);
    const double qn = -2.0 * std::sin(kPi * nq * (u + 0.5 * w)) * std::sin(0.5 * kPi * nq * w) / w;
    const double vn = std::cos(kPi * nq * (u + w));
    for (std::size_t c = 0; c < dq_.size(); ++c) quotients[c] += dq_[c][nyq].real() * qn;
    for (std::size_t c = 0; c < val_.size(); ++c) values[c] += val_[c][nyq].real() * vn;
  }

 private:
  std::size_t n_;
  std::vector<std::vector<cplx>> dq_, val_;
};

std::size_t panels_for(double width, double pw) {
  return static_cast<std::size_t>(std::max(1.0, std::ceil(width / pw - 1e-12)));
}

}  // namespace

double first_variation(const ClosedCurve& curve, const TestField& h, const QuadratureScheme& scheme) {
  return 2.0 * decompose(unit_pair(curve, h, scheme)).half_variation;
}

double q_limit(const ClosedCurve& curve, const TestField& h, const QuadratureScheme& scheme) {
  return decompose(unit_pair(curve, h, scheme)).q;
}

double t1_form(const ClosedCurve& curve, const TestField& h, const QuadratureScheme& scheme) {
  return decompose(unit_pair(curve, h, scheme)).t1;
}

double t2_form(const ClosedCurve& curve, const TestField& h, const QuadratureScheme& scheme) {
  return decompose(unit_pair(curve, h, scheme)).t2;
}

double q_form(const ClosedCurve& curve, const TestField& h, double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw DomainError("Q_eps needs eps in (0, 1/2)");
  return q_window(curve, h, eps, 0.5);
}

double q_window(const ClosedCurve& curve, const TestField& h, double lo, double hi) {
  const UnitPair p = unit_pair(curve, h, {});
  return spectral::gagliardo_window(p.gamma, p.h, lo, hi, spectral::PairingWindow::Unit);
}

ELReport el_residual(const ClosedCurve& curve, const TestField& h, std::span<const TestField> basis,
                     const QuadratureScheme& scheme) {
  const Decomposition d = decompose(unit_pair(curve, h, scheme));
  ELReport r;
  r.q_value = d.q;
  r.t1_value = d.t1;
  r.t2_value = d.t2;
  r.residual = d.q - d.t1 - d.t2;
  r.mode_residuals.reserve(basis.size());
  for (const TestField& b : basis) {
    const Decomposition db = decompose(unit_pair(curve, b, scheme));
    r.mode_residuals.push_back(db.q - db.t1 - db.t2);
  }
  return r;
}

double intrinsic_distance_variation(const ClosedCurve& curve, const TestField& h, double u, double w) {
  check_grid(curve, h);
  if (std::abs(w) > 0.5) throw DomainError("intrinsic distance needs |w| <= 1/2");
  const CurveGeometry geo = geometry(curve);
  const std::size_t n = curve.size();
  PeriodicField iota(1, n);
  for (std::size_t j = 0; j < n; ++j) iota(0, j) = dot(geo.derivative, h.derivative, j) / geo.speed(0, j);
  const double dlen = fourier::mean(iota)[0];
  const fourier::TrigInterpolant sigma(fourier::periodic_antiderivative(iota));
  const ArcLength s(geo.speed, geo.length);
  const double arc = s.arc(u, w);
  const double darc = (w >= 0.0 ? 1.0 : -1.0) * (dlen * w + sigma.value(0, u + w) - sigma.value(0, u));
  return std::abs(arc) <= 0.5 * geo.length ? darc : dlen - darc;
}

double first_variation_general(const ClosedCurve& curve, const TestField& h, const QuadratureScheme& scheme) {
  check_grid(curve, h);
  scheme.resolved(curve);
  const double len = length(curve);
  const ClosedCurve unit((1.0 / len) * curve.samples());
  const PeriodicField hh = (1.0 / len) * h.field;
  const std::size_t n = unit.size(), dim = unit.dim();
  const CurveGeometry geo = geometry(unit, scheme.thresholds);
  const PeriodicField dh = fourier::derivative(hh, 1);

  PeriodicField iota(1, n);
  std::vector<double> a_coef(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double sp = geo.speed(0, j);
    const double gh = dot(geo.derivative, dh, j);
    iota(0, j) = gh / sp;
    a_coef[j] = gh / (sp * sp);
  }
  const double dlen = fourier::mean(iota)[0];
  const PeriodicField ps = fourier::periodic_antiderivative(geo.speed);
  const PeriodicField pi = fourier::periodic_antiderivative(iota);
  const PairEvaluator ev({&unit.samples(), &hh, &ps, &pi}, geo.speed);
  const ArcLength arclen(geo.speed, 1.0);
  const double pw = panel_width(n);
  const auto& gl = quad::gauss_legendre(kOrder);

  std::vector<double> rows(n);
  parallel_for(0, n, [&](std::size_t j) {
    const double u = static_cast<double>(j) / static_cast<double>(n);
    std::vector<double> qv(ev.quotient_count()), vv(1);
    const double sp0 = geo.speed(0, j);
    auto integrand = [&](double w, bool short_branch) {
      ev.eval(u, w, qv, vv);
      double q = 0.0, pd = 0.0;
      for (std::size_t a = 0; a < dim; ++a) {
        q += qv[a] * qv[a];
        pd += qv[a] * qv[dim + a];
      }
      const double aw = std::abs(w);
      const double arc = 1.0 + qv[2 * dim];
      const double darc = dlen + qv[2 * dim + 1];
      const double dd = short_branch ? arc : 1.0 / aw - arc;
      const double ddelta = short_branch ? darc : dlen / aw - darc;
      const double bracket = (1.0 / q - 1.0 / (dd * dd)) * a_coef[j] - pd / (q * q) + ddelta / (dd * dd * dd);
      return bracket / (w * w) * vv[0] * sp0;
    };
    auto panels = [&](double lo, double hi, auto&& f) {
      if (!(hi > lo)) return 0.0;
      const std::size_t np = panels_for(hi - lo, pw);
      const double width = (hi - lo) / static_cast<double>(np);
      double s = 0.0;
      for (std::size_t p = 0; p < np; ++p) {
        const double a = lo + width * static_cast<double>(p);
        for (std::size_t i = 0; i < gl.size(); ++i)
          s += 0.5 * width * gl.weights[i] * f(a + 0.5 * width * (gl.nodes[i] + 1.0));
      }
      return s;
    };
    // Branch switches: s(u + w±) = s(u) ± ℒ/2.
    const double s0 = arclen(u);
    const double up = s0 + 0.5, um = s0 - 0.5;
    const double wp = (up > 1.0 ? arclen.inverse(up - 1.0) + 1.0 : arclen.inverse(up)) - u;
    const double wm = (um < 0.0 ? arclen.inverse(um + 1.0) - 1.0 : arclen.inverse(um)) - u;
    const double cut_p = std::min(wp, 0.5), cut_m = std::max(wm, -0.5);
    const double inner = 0.5 * std::min(cut_p, -cut_m);
    double acc = panels(0.0, inner, [&](double w) { return integrand(w, true) + integrand(-w, true); });
    acc += panels(inner, cut_p, [&](double w) { return integrand(w, true); });
    acc += panels(cut_p, 0.5, [&](double w) { return integrand(w, false); });
    acc += panels(inner, -cut_m, [&](double w) { return integrand(-w, true); });
    acc += panels(-0.5, cut_m, [&](double w) { return integrand(w, false); });
    rows[j] = acc;
  });
  return 2.0 * pairwise_sum(rows) / static_cast<double>(n);
}

double g_alpha_radial(double r, double alpha) {
  if (!(r > 0.0)) throw DomainError("G^alpha is singular at the origin");
  if (std::abs(r - 1.0) < 1e-4) {
    const double a = 0.5 * alpha, t = r * r - 1.0;
    const double ratio = a + a * (a - 1.0) * t / 2.0 + a * (a - 1.0) * (a - 2.0) * t * t / 6.0 +
                         a * (a - 1.0) * (a - 2.0) * (a - 3.0) * t * t * t / 24.0;
    return ratio / (2.0 * std::pow(r, alpha));
  }
  const double ra = std::pow(r, alpha);
  return (1.0 - ra) / (2.0 * ra * (1.0 - r * r));
}

double g_alpha(std::span<const double> z, double alpha) {
  double q = 0.0;
  for (double x : z) q += x * x;
  return g_alpha_radial(std::sqrt(q), alpha);
}

namespace {

struct AlphaSetup {
  PeriodicField gamma, dgamma, dh;
  std::size_t bandwidth = 1;
};

AlphaSetup alpha_setup(const ClosedCurve& curve, const TestField& h, const QuadratureScheme& scheme) {
  const UnitPair p = unit_pair(curve, h, scheme);
  AlphaSetup s{p.gamma, fourier::derivative(p.gamma, 1), fourier::derivative(p.h, 1), 1};
  double top = 0.0;
  std::vector<std::vector<cplx>> spec;
  for (std::size_t a = 0; a < p.gamma.dim(); ++a) {
    spec.push_back(fourier::forward(p.gamma.component(a)));
    for (std::size_t k = 1; k < spec.back().size(); ++k) top = std::max(top, std::abs(spec.back()[k]));
  }
  for (const auto& c : spec)
    for (std::size_t k = 1; k < c.size(); ++k)
      if (std::abs(c[k]) > 1e-14 * top) s.bandwidth = std::max(s.bandwidth, k);
  return s;
}

/// Gauss–Legendre rule on [0, 1] with 8 nodes per panel, enough panels to
/// resolve frequency `bandwidth` stretched by |w|.
quad::Rule parameter_rule(std::size_t bandwidth, double w) {
  const auto panels = static_cast<std::size_t>(std::max(1.0, std::ceil(2.0 * static_cast<double>(bandwidth) * std::abs(w))));
  return quad::composite(0.0, 1.0, 8, panels);
}

quad::Rule w_rule(std::size_t n) {
  const double pw = panel_width(n);
  quad::Rule r = quad::composite(-0.5, 0.0, kOrder, panels_for(0.5, pw));
  r.append(quad::composite(0.0, 0.5, kOrder, panels_for(0.5, pw)));
  return r;
}

/// ∫∫ F(u, w) dw du with F built per w node from grid fields.
template <class RowFn>
double w_u_integral(std::size_t n, RowFn&& row) {
  const quad::Rule rule = w_rule(n);
  std::vector<double> terms(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) terms[i] = rule.weights[i] * row(rule.nodes[i]);
  return pairwise_sum(terms);
}

/// 2 Σ_i c_i |f_i − f̄|² = Σ_{i,k} c_i c_k |f_i − f_k|² per grid point.
PeriodicField spread(const std::vector<PeriodicField>& f, const quad::Rule& rule, PeriodicField* mean_out = nullptr) {
  const std::size_t n = f.front().size(), dim = f.front().dim();
  PeriodicField mean(dim, n, 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) mean += rule.weights[i] * f[i];
  PeriodicField out(1, n, 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double q = 0.0;
      for (std::size_t a = 0; a < dim; ++a) {
        const double d = f[i](a, j) - mean(a, j);
        q += d * d;
      }
      out(0, j) += 2.0 * rule.weights[i] * q;
    }
  }
  if (mean_out) *mean_out = std::move(mean);
  return out;
}

}  // namespace

double t_alpha_op(const ClosedCurve& curve, const TestField& h, const TAlphaParams& prm,
                  const QuadratureScheme& scheme) {
  for (double v : {prm.s1, prm.s2, prm.tau1, prm.tau2})
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("T^alpha parameters must lie in [0, 1]");
  const AlphaSetup s = alpha_setup(curve, h, scheme);
  const std::size_t n = s.gamma.size(), dim = s.gamma.dim();
  const fourier::Shifter gam(s.gamma), dg(s.dgamma), dh(s.dh);
  auto row = [&](double w) {
    const PeriodicField z = gam.difference_quotient(w);
    const PeriodicField d = dg(prm.tau1 * w) - dg(prm.tau2 * w);
    const PeriodicField g1 = dg(prm.s1 * w), h2 = dh(prm.s2 * w);
    std::vector<double> v(n);
    parallel_for(0, n, [&](std::size_t j) {
      double zz = 0.0, dd = 0.0;
      for (std::size_t a = 0; a < dim; ++a) {
        zz += z(a, j) * z(a, j);
        dd += d(a, j) * d(a, j);
      }
      v[j] = g_alpha_radial(std::sqrt(zz), prm.alpha) * dd / (w * w) * dot(g1, h2, j);
    });
    return pairwise_sum(v) / static_cast<double>(n);
  };
  return w_u_integral(n, row);
}

double t1_via_t_alpha(const ClosedCurve& curve, const TestField& h, const QuadratureScheme& scheme) {
  const AlphaSetup s = alpha_setup(curve, h, scheme);
  const std::size_t n = s.gamma.size(), dim = s.gamma.dim();
  const fourier::Shifter gam(s.gamma), dg(s.dgamma);
  auto row = [&](double w) {
    const PeriodicField z = gam.difference_quotient(w);
    const quad::Rule tau = parameter_rule(s.bandwidth, w);
    std::vector<PeriodicField> g;
    for (double t : tau.nodes) g.push_back(dg(t * w));
    const PeriodicField sq = spread(g, tau);
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) {
      double zz = 0.0;
      for (std::size_t a = 0; a < dim; ++a) zz += z(a, j) * z(a, j);
      v[j] = g_alpha_radial(std::sqrt(zz), 2.0) * sq(0, j) / (w * w) * dot(s.dgamma, s.dh, j);
    }
    return pairwise_sum(v) / static_cast<double>(n);
  };
  return -w_u_integral(n, row);
}

double t2_via_t_alpha(const ClosedCurve& curve, const TestField& h, const QuadratureScheme& scheme) {
  const AlphaSetup s = alpha_setup(curve, h, scheme);
  const std::size_t n = s.gamma.size(), dim = s.gamma.dim();
  const fourier::Shifter gam(s.gamma), dg(s.dgamma), dh(s.dh);
  auto row = [&](double w) {
    const PeriodicField z = gam.difference_quotient(w);
    const quad::Rule tau = parameter_rule(s.bandwidth, w);
    std::vector<PeriodicField> g, hv;
    for (double t : tau.nodes) {
      g.push_back(dg(t * w));
      hv.push_back(dh(t * w));
    }
    PeriodicField gbar(dim, n), hbar(dim, n, 0.0);
    const PeriodicField sq = spread(g, tau, &gbar);
    for (std::size_t i = 0; i < hv.size(); ++i) hbar += tau.weights[i] * hv[i];
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) {
      double zz = 0.0;
      for (std::size_t a = 0; a < dim; ++a) zz += z(a, j) * z(a, j);
      v[j] = g_alpha_radial(std::sqrt(zz), 4.0) * sq(0, j) / (w * w) * dot(gbar, hbar, j);
    }
    return pairwise_sum(v) / static_cast<double>(n);
  };
  return w_u_integral(n, row);
}

std::vector<TestField> trig_basis(std::size_t n, std::size_t dim, std::size_t basis_size) {
  std::vector<TestField> out;
  out.reserve(basis_size * dim);
  for (std::size_t axis = 0; axis < dim; ++axis) {
    for (std::size_t i = 0; i < basis_size; ++i) {
      const std::size_t k = (i + 1) / 2;
      const bool cosine = i % 2 == 1;
      auto f = PeriodicField::sample(dim, n, [&](double u, std::size_t a) {
        if (a != axis) return 0.0;
        if (i == 0) return 1.0;
        const double x = kTwoPi * static_cast<double>(k) * u;
        return std::numbers::sqrt2 * (cosine ? std::cos(x) : std::sin(x));
      });
      out.push_back(TestField::from(std::move(f)));
    }
  }
  return out;
}

std::vector<TestField> normal_mode_basis(const ClosedCurve& curve, std::size_t k_max) {
  const std::size_t n = curve.size(), dim = curve.dim();
  const PeriodicField d1 = fourier::derivative(curve.samples(), 1);
  const PeriodicField d2 = fourier::derivative(curve.samples(), 2);
  PeriodicField nu(dim, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double sp = std::sqrt(dot(d1, d1, j));
    if (dim == 2) {
      nu(0, j) = -d1(1, j) / sp;
      nu(1, j) = d1(0, j) / sp;
      continue;
    }
    const double along = dot(d1, d2, j) / (sp * sp);
    double nrm = 0.0;
    for (std::size_t a = 0; a < dim; ++a) {
      nu(a, j) = d2(a, j) - along * d1(a, j);
      nrm += nu(a, j) * nu(a, j);
    }
    nrm = std::sqrt(nrm);
    if (!(nrm > 1e-12 * sp * sp)) throw DegenerateCurve("principal normal undefined where curvature vanishes");
    for (std::size_t a = 0; a < dim; ++a) nu(a, j) /= nrm;
  }
  std::vector<TestField> out;
  for (std::size_t k = 1; k <= k_max; ++k) {
    for (int phase = 0; phase < 2; ++phase) {
      PeriodicField f(dim, n);
      for (std::size_t j = 0; j < n; ++j) {
        const double x = kTwoPi * static_cast<double>(k * j) / static_cast<double>(n);
        const double c = phase == 0 ? std::cos(x) : std::sin(x);
        for (std::size_t a = 0; a < dim; ++a) f(a, j) = c * nu(a, j);
      }
      f *= 1.0 / l2_norm(f);
      out.push_back(TestField::from(std::move(f)));
    }
  }
  return out;
}

std::vector<double> gradient_vector(const ClosedCurve& curve, std::size_t basis_size, const QuadratureScheme& scheme) {
  const auto basis = trig_basis(curve.size(), curve.dim(), basis_size);
  std::vector<double> out;
  out.reserve(basis.size());
  for (const TestField& b : basis) out.push_back(first_variation(curve, b, scheme));
  return out;
}

namespace {

/// Adjoint of the midpoint δE on a unit-length arc-length grid curve.
PeriodicField unit_gradient(const PeriodicField& g) {
  const std::size_t n = g.size(), dim = g.dim();
  const double nn = static_cast<double>(n);
  const PeriodicField gp = fourier::shift(g, 0.5 / nn);
  const PeriodicField dg = fourier::derivative(g, 1);
  const auto g2 = doubled_components(g);
  const auto gp2 = doubled_components(gp);
  const auto& kern = kernels::active();
  PeriodicField v(dim, n), b(dim, n, 0.0), r(dim, n, 0.0);
  parallel_for(0, n, [&](std::size_t j) {
    std::vector<const double*> t(dim);
    std::vector<double> acc(dim, 0.0);
    for (std::size_t a = 0; a < dim; ++a) t[a] = gp2[a].data() + j;
    Point base = g.point(j);
    const double alpha = kern.gradient_row(t.data(), base.data(), dim, n, acc.data());
    for (std::size_t a = 0; a < dim; ++a) {
      v(a, j) = alpha * dg(a, j);
      b(a, j) = acc[a];
    }
    // Rows based at the shifted points collect the terms where h enters through γ⁺.
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::size_t a = 0; a < dim; ++a) t[a] = g2[a].data() + j;
    base = gp.point(j);
    kern.gradient_row(t.data(), base.data(), dim, n, acc.data());
    for (std::size_t a = 0; a < dim; ++a) r(a, j) = acc[a];
  });
  PeriodicField x = fourier::shift(r, -0.5 / nn) + b - fourier::derivative(v, 1);
  x *= 2.0 / nn;
  return x;
}

}  // namespace

PeriodicField l2_gradient(const ClosedCurve& curve) {
  const double len = length(curve);
  if (is_arclength(curve)) {
    PeriodicField g = unit_gradient((1.0 / len) * curve.samples());
    g *= 1.0 / len;
    return g;
  }
  const ClosedCurve unit = normalized_arclength(curve, curve.size());
  const fourier::TrigInterpolant gt(unit_gradient(unit.samples()));
  const CurveGeometry geo = geometry(curve);
  const std::size_t n = curve.size(), dim = curve.dim();
  PeriodicField out(dim, n);
  std::vector<double> val(dim);
  for (std::size_t j = 0; j < n; ++j) {
    gt.value(geo.cumulative_arclength[j] / len, val);
    const double f = geo.speed(0, j) / (len * len);
    for (std::size_t a = 0; a < dim; ++a) out(a, j) = val[a] * f;
  }
  return out;
}

}  // namespace moebius
