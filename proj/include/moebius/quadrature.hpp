#pragma once

#include <cstddef>
#include <vector>

namespace moebius::quad {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
  void append(const Rule& other);
};

/// n-point Gauss–Legendre rule on [-1, 1] (cached).
const Rule& gauss_legendre(std::size_t n);

/// Gauss–Legendre with `order` nodes on each of `panels` equal subintervals of [a, b].
Rule composite(double a, double b, std::size_t order, std::size_t panels = 1);

/// Gauss–Legendre panels on [lo, hi] with dyadic breakpoints lo + (hi-lo)/2^k
/// graded toward lo until the innermost panel has width ≤ min_width. The
/// innermost panel [lo, lo + width] is included.
Rule dyadic_toward_left(double lo, double hi, double min_width, std::size_t order);

/// Rule for ∫_a^b with panels whose breakpoints are the dyadic points 2^{-k}
/// (k ≥ 1) inside (a, b). Panels wider than max_width are split evenly, so
/// two windows sharing a dyadic breakpoint use identical nodes on the overlap.
Rule dyadic_window(double a, double b, std::size_t order, double max_width = 1.0);

}  // namespace moebius::quad
