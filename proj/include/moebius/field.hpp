#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace moebius {

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// Samples of a 1-periodic function ℝ/ℤ → ℝ^dim on the uniform grid u_j = j/N.
/// Storage is component-major (one contiguous row of N values per
/// coordinate) so the pair kernels can stream a single coordinate.
class PeriodicField {
 public:
  PeriodicField() = default;
  PeriodicField(std::size_t dim, std::size_t n, double fill = 0.0);
  PeriodicField(std::size_t dim, std::size_t n, std::vector<double> component_major);

  /// Builds a field by sampling `fn(u, component)` at the grid nodes.
  template <class Fn>
  static PeriodicField sample(std::size_t dim, std::size_t n, Fn&& fn) {
    PeriodicField f(dim, n);
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t j = 0; j < n; ++j)
        f(a, j) = fn(static_cast<double>(j) / static_cast<double>(n), a);
    return f;
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  double& operator()(std::size_t a, std::size_t j) { return data_[a * n_ + j]; }
  double operator()(std::size_t a, std::size_t j) const { return data_[a * n_ + j]; }

  std::span<double> component(std::size_t a) { return {data_.data() + a * n_, n_}; }
  std::span<const double> component(std::size_t a) const { return {data_.data() + a * n_, n_}; }

  std::vector<double> point(std::size_t j) const;
  const std::vector<double>& raw() const noexcept { return data_; }
  std::vector<double>& raw() noexcept { return data_; }

  bool all_finite() const;

  PeriodicField& operator+=(const PeriodicField& o);
  PeriodicField& operator-=(const PeriodicField& o);
  PeriodicField& operator*=(double s);
  friend PeriodicField operator+(PeriodicField a, const PeriodicField& b) { return a += b; }
  friend PeriodicField operator-(PeriodicField a, const PeriodicField& b) { return a -= b; }
  friend PeriodicField operator*(double s, PeriodicField a) { return a *= s; }

  /// Grid inner product (1/N) Σ_j ⟨f_j, g_j⟩, i.e. the trapezoid value of ∫⟨f,g⟩.
  friend double inner(const PeriodicField& f, const PeriodicField& g);
  friend double l2_norm(const PeriodicField& f);

  bool operator==(const PeriodicField&) const = default;

 private:
  std::size_t dim_ = 0;
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// A closed curve γ: ℝ/ℤ → ℝ^dim sampled on a power-of-two grid (N ≥ 16).
/// Construction validates the invariants; the samples are then immutable.
class ClosedCurve {
 public:
  explicit ClosedCurve(PeriodicField samples);

  std::size_t dim() const noexcept { return samples_.dim(); }
  std::size_t size() const noexcept { return samples_.size(); }
  const PeriodicField& samples() const noexcept { return samples_; }
  std::vector<double> point(std::size_t j) const { return samples_.point(j); }
  double operator()(std::size_t a, std::size_t j) const { return samples_(a, j); }

  bool operator==(const ClosedCurve&) const = default;

 private:
  PeriodicField samples_;
};

/// Test fields carry their spectral derivative alongside the samples.
struct TestField {
  PeriodicField field;
  PeriodicField derivative;

  static TestField from(PeriodicField f);
};

}  // namespace moebius
