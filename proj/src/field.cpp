#include "moebius/field.hpp"

#include <cmath>
#include <string>

#include "moebius/error.hpp"
#include "moebius/fourier.hpp"

namespace moebius {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DegenerateCurve: return "DegenerateCurve";
    case ErrorKind::NotArcLength: return "NotArcLength";
    case ErrorKind::CalibrationUnstable: return "CalibrationUnstable";
    case ErrorKind::NotUnit: return "NotUnit";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::SelfIntersectionImminent: return "SelfIntersectionImminent";
  }
  return "Error";
}

PeriodicField::PeriodicField(std::size_t dim, std::size_t n, double fill)
    : dim_(dim), n_(n), data_(dim * n, fill) {}

PeriodicField::PeriodicField(std::size_t dim, std::size_t n, std::vector<double> component_major)
    : dim_(dim), n_(n), data_(std::move(component_major)) {
  if (data_.size() != dim * n)
    throw InvalidInput("field storage has " + std::to_string(data_.size()) + " values, expected " +
                       std::to_string(dim * n));
}

std::vector<double> PeriodicField::point(std::size_t j) const {
  std::vector<double> p(dim_);
  for (std::size_t a = 0; a < dim_; ++a) p[a] = (*this)(a, j);
  return p;
}

bool PeriodicField::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

PeriodicField& PeriodicField::operator+=(const PeriodicField& o) {
  if (o.dim_ != dim_ || o.n_ != n_) throw InvalidInput("field shape mismatch in +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

PeriodicField& PeriodicField::operator-=(const PeriodicField& o) {
  if (o.dim_ != dim_ || o.n_ != n_) throw InvalidInput("field shape mismatch in -=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

PeriodicField& PeriodicField::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

double inner(const PeriodicField& f, const PeriodicField& g) {
  if (f.dim_ != g.dim_ || f.n_ != g.n_) throw InvalidInput("field shape mismatch in inner");
  double s = 0.0;
  for (std::size_t i = 0; i < f.data_.size(); ++i) s += f.data_[i] * g.data_[i];
  return s / static_cast<double>(f.n_);
}

double l2_norm(const PeriodicField& f) { return std::sqrt(inner(f, f)); }

ClosedCurve::ClosedCurve(PeriodicField samples) : samples_(std::move(samples)) {
  if (samples_.dim() < 2) throw InvalidInput("curve dimension must be at least 2");
  if (samples_.size() < 16 || !is_power_of_two(samples_.size()))
    throw InvalidInput("curve sample count must be a power of two >= 16, got " +
                       std::to_string(samples_.size()));
  if (!samples_.all_finite()) throw InvalidInput("curve samples must be finite");
}

TestField TestField::from(PeriodicField f) {
  if (!f.all_finite()) throw InvalidInput("test field must be finite");
  auto d = fourier::derivative(f);
  return TestField{std::move(f), std::move(d)};
}

}  // namespace moebius
