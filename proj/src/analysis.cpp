#include "moebius/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "moebius/error.hpp"
#include "moebius/fourier.hpp"
#include "moebius/quadrature.hpp"
#include "moebius/spectral.hpp"

namespace moebius::analysis {

namespace {

double magnitude_at(const PeriodicField& f, std::size_t j) {
  if (f.dim() == 1) return std::abs(f(0, j));
  double s = 0.0;
  for (std::size_t a = 0; a < f.dim(); ++a) s += f(a, j) * f(a, j);
  return std::sqrt(s);
}

PeriodicField pointwise_product(const PeriodicField& a, const PeriodicField& b) {
  PeriodicField out(1, a.size());
  for (std::size_t j = 0; j < a.size(); ++j) out(0, j) = a(0, j) * b(0, j);
  return out;
}

void require_scalar_pair(const PeriodicField& a, const PeriodicField& b) {
  if (a.dim() != 1 || b.dim() != 1) throw InvalidInput("commutator_h expects scalar fields");
  if (a.size() != b.size()) throw InvalidInput("commutator_h: grid sizes differ");
}

}  // namespace

bool Window::contains(double u) const {
  const double span = measure();
  if (span >= 1.0) return true;
  double r = std::fmod(u - lo, 1.0);
  if (r < 0.0) r += 1.0;
  if (r >= 1.0) r = 0.0;
  return r < span;
}

bool LorentzSpec::valid() const {
  if (std::isnan(p) || std::isnan(q)) return false;
  if (p > 1.0 && p < kInfinity) return q >= 1.0;
  if (p == 1.0) return q == 1.0;
  if (p == kInfinity) return q == kInfinity;
  return false;
}

double Rearrangement::operator()(double t) const {
  if (t < 0.0 || cell <= 0.0) return values.empty() ? 0.0 : values.front();
  const auto i = static_cast<std::size_t>(std::floor(t / cell));
  return i < values.size() ? values[i] : 0.0;
}

Rearrangement decreasing_rearrangement(const PeriodicField& f, const Window& window) {
  Rearrangement r;
  const std::size_t n = f.size();
  if (n == 0) return r;
  r.cell = 1.0 / static_cast<double>(n);
  r.values.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (window.contains(static_cast<double>(j) * r.cell)) r.values.push_back(magnitude_at(f, j));
  }
  std::sort(r.values.begin(), r.values.end(), std::greater<>());
  return r;
}

double lorentz_norm(const Rearrangement& r, double p, double q) {
  if (!LorentzSpec{p, q, {}}.valid()) throw DomainError("disallowed Lorentz exponents");
  if (r.values.empty()) return 0.0;
  if (p == kInfinity) return r.values.front();
  const double inv_p = 1.0 / p;
  if (q == kInfinity) {
    double best = 0.0;
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      best = std::max(best, r.values[i] * std::pow(static_cast<double>(i + 1) * r.cell, inv_p));
    }
    return best;
  }
  // ∫_{t_i}^{t_{i+1}} t^{q/p − 1} dt = (p/q)(t_{i+1}^{q/p} − t_i^{q/p})
  const double e = q / p;
  double sum = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    const double next = std::pow(static_cast<double>(i + 1) * r.cell, e);
    if (r.values[i] > 0.0) sum += std::pow(r.values[i], q) * (next - prev);
    prev = next;
  }
  return std::pow(sum / e, 1.0 / q);
}

double lorentz_norm(const PeriodicField& f, const LorentzSpec& spec) {
  if (!spec.valid()) throw DomainError("disallowed Lorentz exponents");
  return lorentz_norm(decreasing_rearrangement(f, spec.window), spec.p, spec.q);
}

PeriodicField commutator_h(const PeriodicField& a, const PeriodicField& b, double s) {
  require_scalar_pair(a, b);
  const std::size_t n = a.size();
  const PeriodicField a2 = fourier::resample(a, 2 * n);
  const PeriodicField b2 = fourier::resample(b, 2 * n);
  PeriodicField h = spectral::frac_laplacian(pointwise_product(a2, b2), s);
  const PeriodicField a_db = pointwise_product(a2, spectral::frac_laplacian(b2, s));
  const PeriodicField b_da = pointwise_product(b2, spectral::frac_laplacian(a2, s));
  h -= a_db + b_da;
  return fourier::resample(h, n);
}

Split normal_tangential_split(const PeriodicField& t, const PeriodicField& v) {
  if (t.dim() != v.dim() || t.size() != v.size()) throw InvalidInput("split: field shapes differ");
  const std::size_t d = t.dim();
  const std::size_t n = t.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(magnitude_at(t, j) - 1.0) > 1e-8) {
      throw NotUnit("tangent field is not unit length at sample " + std::to_string(j));
    }
  }
  Split out;
  out.normal = PeriodicField(1, n);
  for (std::size_t j = 0; j < n; ++j) {
    double dot = 0.0;
    for (std::size_t a = 0; a < d; ++a) dot += t(a, j) * v(a, j);
    out.normal(0, j) = dot;
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = i + 1; k < d; ++k) {
      PeriodicField part(1, n);
      for (std::size_t j = 0; j < n; ++j) part(0, j) = t(i, j) * v(k, j) - t(k, j) * v(i, j);
      out.tangential.push_back(std::move(part));
      out.pairs.emplace_back(i, k);
    }
  }
  return out;
}

double gamma_term(const PeriodicField& gprime, double u, const GammaScheme& scheme) {
  if (gprime.empty()) throw InvalidInput("gamma_term: empty field");
  if (scheme.s_nodes < 2 || scheme.w_order < 2 || !(scheme.w_min > 0.0 && scheme.w_min < 0.25)) {
    throw DomainError("gamma_term: invalid scheme");
  }
  const std::size_t d = gprime.dim();
  const fourier::TrigInterpolant g(gprime);

  // The first factor has a kink at s₂ = 0, so its rule is split there.
  const quad::Rule s_outer = quad::composite(-1.0, 1.0, scheme.s_nodes, 2);
  const quad::Rule& s_inner = quad::gauss_legendre(scheme.s_nodes);

  quad::Rule w_rule;
  for (double hi = 0.25; hi > scheme.w_min * (1.0 + 1e-12); hi *= 0.5) {
    w_rule.append(quad::composite(std::max(hi * 0.5, scheme.w_min), hi, scheme.w_order));
  }

  std::vector<double> g0(d);
  g.value(u, g0);
  std::vector<double> outer(s_outer.size() * d);
  std::vector<double> inner(s_inner.size() * d);

  auto integrand = [&](double w) {
    for (std::size_t i = 0; i < s_outer.size(); ++i) {
      g.value(u + s_outer.nodes[i] * w, std::span<double>(outer.data() + i * d, d));
    }
    for (std::size_t i = 0; i < s_inner.size(); ++i) {
      g.value(u + s_inner.nodes[i] * w, std::span<double>(inner.data() + i * d, d));
    }
    double first = 0.0;
    for (std::size_t i = 0; i < s_outer.size(); ++i) {
      double q = 0.0;
      for (std::size_t a = 0; a < d; ++a) {
        const double diff = g0[a] - outer[i * d + a];
        q += diff * diff;
      }
      first += s_outer.weights[i] * std::sqrt(q);
    }
    double second = 0.0;
    for (std::size_t i = 0; i < s_inner.size(); ++i) {
      for (std::size_t k = i + 1; k < s_inner.size(); ++k) {
        double q = 0.0;
        for (std::size_t a = 0; a < d; ++a) {
          const double diff = inner[i * d + a] - inner[k * d + a];
          q += diff * diff;
        }
        second += 2.0 * s_inner.weights[i] * s_inner.weights[k] * q;
      }
    }
    return first * second / (w * w);
  };

  double total = 0.0;
  for (std::size_t i = 0; i < w_rule.size(); ++i) {
    const double w = w_rule.nodes[i];
    total += w_rule.weights[i] * (integrand(w) + integrand(-w));
  }
  return total;
}

PeriodicField half_derivative_magnitude(const ClosedCurve& curve) {
  const PeriodicField dh = spectral::frac_laplacian(fourier::derivative(curve.samples()), 0.5);
  PeriodicField out(1, curve.size());
  for (std::size_t j = 0; j < curve.size(); ++j) out(0, j) = magnitude_at(dh, j);
  return out;
}

MorreyProfile morrey_decay_profile(const PeriodicField& f, const std::vector<double>& centers,
                                   const std::vector<double>& radii) {
  if (radii.size() < 3) throw InsufficientSamples("morrey_decay_profile needs at least 3 radii");
  if (centers.empty()) throw InvalidInput("morrey_decay_profile needs at least one center");
  for (double r : radii) {
    if (!(r > 0.0 && r < 0.25)) throw DomainError("radius outside (0, 1/4)");
    int e = 0;
    if (std::frexp(r, &e) != 0.5) throw DomainError("radius is not dyadic");
  }
  MorreyProfile profile;
  for (double c : centers) {
    for (double r : radii) {
      const double value = lorentz_norm(f, LorentzSpec{2.0, kInfinity, Window::ball(c, r)});
      profile.samples.push_back({r, value, c});
    }
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t count = 0;
  double x_min = kInfinity, x_max = -kInfinity;
  for (const auto& s : profile.samples) {
    if (!(s.value > 0.0)) continue;
    const double x = std::log(s.radius);
    const double y = std::log(s.value);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    x_min = std::min(x_min, x);
    x_max = std::max(x_max, x);
    ++count;
  }
  if (count < 2 || x_max <= x_min) {
    profile.degenerate = true;
    return profile;
  }
  const double nc = static_cast<double>(count);
  profile.sigma = (nc * sxy - sx * sy) / (nc * sxx - sx * sx);
  return profile;
}

std::size_t iteration_minimal_m(double theta, double c) {
  if (!(theta > 0.0) || !(c >= 0.0)) throw DomainError("iteration_minimal_m: θ > 0 and C ≥ 0 required");
  const double half = 0.5 * theta;
  const double c_tilde = c / (std::exp2(half) - 1.0);
  std::size_t m = 1;
  while (c_tilde * std::exp2(-half * static_cast<double>(m)) >= 0.25) ++m;
  return m;
}

namespace {

double iteration_rhs(const std::vector<double>& b, std::size_t k, double theta, double eps, std::size_t m,
                     double c) {
  double tail = 0.0;
  for (std::size_t l = 1; l <= k; ++l) tail += std::exp2(-theta * static_cast<double>(l)) * b[k - l];
  const double md = static_cast<double>(m);
  return eps * b[k] + c * (std::exp2(-theta * (static_cast<double>(k) + md)) + std::exp2(-theta * md) * tail);
}

}  // namespace

IterationResult iteration_lemma_check(const std::vector<double>& b, double theta, double eps, std::size_t m,
                                      double c) {
  if (!(theta > 0.0) || !(c >= 0.0) || !(eps > 0.0) || m == 0) {
    throw DomainError("iteration lemma: need θ > 0, ε > 0, C ≥ 0, m ≥ 1");
  }
  for (double v : b) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidInput("iteration lemma: b must be finite and nonnegative");
  }
  const double half = 0.5 * theta;
  const double md = static_cast<double>(m);
  const double c_sum = c / (std::exp2(half) - 1.0);
  if (!(eps < 0.25 * std::exp2(-theta * md))) throw DomainError("iteration lemma: ε is not small enough for m");
  if (!(c_sum * std::exp2(-half * md) < 0.25)) throw DomainError("iteration lemma: m is not large enough for C");

  for (std::size_t k = 0; k + m < b.size(); ++k) {
    const double rhs = iteration_rhs(b, k, theta, eps, m, c);
    if (b[k + m] > rhs * (1.0 + 1e-12) + 1e-300) {
      throw HypothesisViolated(static_cast<long>(k), "iteration hypothesis fails at k = " + std::to_string(k));
    }
  }

  IterationResult result;
  double head = 0.0;
  for (std::size_t k = 0; k < b.size(); ++k) {
    const double weighted = b[k] * std::exp2(half * static_cast<double>(k));
    result.c_tilde = std::max(result.c_tilde, weighted);
    if (k < m) head += weighted;
  }
  const double c_forcing = c / (1.0 - std::exp2(-half));
  result.bound = 2.0 * (head + c_forcing * std::exp2(-half * md));
  result.holds = result.c_tilde <= result.bound * (1.0 + 1e-12);
  return result;
}

std::vector<double> iteration_sequence(std::vector<double> head, std::size_t length, double theta, double eps,
                                       std::size_t m, double c, std::uint64_t seed, double slack_min) {
  if (head.size() < m) throw InvalidInput("iteration_sequence: need m initial values");
  if (!(slack_min >= 0.0 && slack_min <= 1.0)) throw DomainError("iteration_sequence: slack_min in [0,1]");
  head.resize(std::max(length, m));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> slack(slack_min, 1.0);
  for (std::size_t k = 0; k + m < head.size(); ++k) {
    const double factor = slack_min < 1.0 ? slack(rng) : 1.0;
    head[k + m] = factor * iteration_rhs(head, k, theta, eps, m, c);
  }
  head.resize(length);
  return head;
}

double multiplier_ratio(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& xi,
                        double alpha, double delta) {
  double dxy = 0.0, dx = 0.0, dy = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    dxy += (x[a] - y[a]) * (x[a] - y[a]);
    dx += (x[a] - xi[a]) * (x[a] - xi[a]);
    dy += (y[a] - xi[a]) * (y[a] - xi[a]);
  }
  dxy = std::sqrt(dxy);
  dx = std::sqrt(dx);
  dy = std::sqrt(dy);
  if (dxy == 0.0) return 0.0;
  const double beta = -1.0 + alpha;
  const double lhs = std::abs(std::pow(dx, beta) - std::pow(dy, beta));
  double rhs = std::pow(dy, beta - delta);
  if (dxy > 2.0 * dx) rhs += std::pow(dx, beta - delta);
  return lhs / (std::pow(dxy, delta) * rhs);
}

MultiplierProbe multiplier_estimate_probe(double alpha, double delta, std::size_t trials, std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha < 1.0) || !(delta >= 0.0 && delta <= 1.0)) {
    throw DomainError("multiplier probe: α ∈ (0,1), δ ∈ [0,1] required");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> decade(-3.0, 3.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_vector = [&](double scale) {
    std::vector<double> v(3);
    double norm = 0.0;
    do {
      norm = 0.0;
      for (double& c : v) {
        c = gauss(rng);
        norm += c * c;
      }
    } while (norm == 0.0);
    const double f = scale / std::sqrt(norm);
    for (double& c : v) c *= f;
    return v;
  };

  MultiplierProbe probe;
  probe.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::vector<double> xi = random_vector(std::pow(10.0, decade(rng)));
    std::vector<double> x = random_vector(std::pow(10.0, decade(rng)));
    std::vector<double> y = random_vector(std::pow(10.0, decade(rng)));
    for (std::size_t a = 0; a < 3; ++a) {
      x[a] += xi[a];
      y[a] += x[a];
    }
    probe.max_ratio = std::max(probe.max_ratio, multiplier_ratio(x, y, xi, alpha, delta));
  }
  return probe;
}

}  // namespace moebius::analysis
