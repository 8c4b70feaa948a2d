#include "moebius/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "moebius/error.hpp"

namespace moebius::quad {
namespace {

Rule build_gauss_legendre(std::size_t n) {
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0, p1 = x;
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
      p0 = p1;
      p1 = pk;
    }
    dp = n == 1 ? 1.0 : static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

}  // namespace

void Rule::append(const Rule& other) {
  nodes.insert(nodes.end(), other.nodes.begin(), other.nodes.end());
  weights.insert(weights.end(), other.weights.begin(), other.weights.end());
}

const Rule& gauss_legendre(std::size_t n) {
  if (n == 0) throw DomainError("Gauss-Legendre order must be positive");
  static std::map<std::size_t, Rule> cache;
  static std::mutex mtx;
  std::lock_guard lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_gauss_legendre(n)).first;
  return it->second;
}

Rule composite(double a, double b, std::size_t order, std::size_t panels) {
  const Rule& g = gauss_legendre(order);
  Rule r;
  r.nodes.reserve(order * panels);
  r.weights.reserve(order * panels);
  const double h = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + h * static_cast<double>(p);
    for (std::size_t i = 0; i < order; ++i) {
      r.nodes.push_back(lo + 0.5 * h * (g.nodes[i] + 1.0));
      r.weights.push_back(0.5 * h * g.weights[i]);
    }
  }
  return r;
}

Rule dyadic_toward_left(double lo, double hi, double min_width, std::size_t order) {
  Rule r;
  double right = hi;
  double width = hi - lo;
  while (true) {
    const double left = lo + 0.5 * width;
    if (width <= min_width) {
      r.append(composite(lo, right, order));
      break;
    }
    r.append(composite(left, right, order));
    right = left;
    width *= 0.5;
  }
  return r;
}

Rule dyadic_window(double a, double b, std::size_t order, double max_width) {
  Rule r;
  if (!(b > a)) return r;
  std::vector<double> cuts{a};
  for (int k = 60; k >= 1; --k) {
    const double d = std::ldexp(1.0, -k);
    if (d > a && d < b) cuts.push_back(d);
  }
  cuts.push_back(b);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double w = cuts[i + 1] - cuts[i];
    const auto pieces = static_cast<std::size_t>(std::max(1.0, std::ceil(w / max_width - 1e-12)));
    r.append(composite(cuts[i], cuts[i + 1], order, pieces));
  }
  return r;
}

}  // namespace moebius::quad
