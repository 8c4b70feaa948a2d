#pragma once

#include <stdexcept>
#include <string>

namespace moebius {

enum class ErrorKind {
  Domain,
  InvalidInput,
  DegenerateCurve,
  NotArcLength,
  CalibrationUnstable,
  NotUnit,
  InsufficientSamples,
  HypothesisViolated,
  SelfIntersectionImminent,
};

const char* to_string(ErrorKind kind);

/// Base of every error raised by the library. `kind()` lets callers map
/// failures onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorKind::Domain, w) {}
};
struct InvalidInput : Error {
  explicit InvalidInput(const std::string& w) : Error(ErrorKind::InvalidInput, w) {}
};
struct DegenerateCurve : Error {
  explicit DegenerateCurve(const std::string& w) : Error(ErrorKind::DegenerateCurve, w) {}
};
struct NotArcLength : Error {
  explicit NotArcLength(const std::string& w) : Error(ErrorKind::NotArcLength, w) {}
};
struct CalibrationUnstable : Error {
  explicit CalibrationUnstable(const std::string& w) : Error(ErrorKind::CalibrationUnstable, w) {}
};
struct NotUnit : Error {
  explicit NotUnit(const std::string& w) : Error(ErrorKind::NotUnit, w) {}
};
struct InsufficientSamples : Error {
  explicit InsufficientSamples(const std::string& w) : Error(ErrorKind::InsufficientSamples, w) {}
};

/// Raised by the iteration-lemma check; carries the first index k at which
/// the recursive hypothesis fails.
struct HypothesisViolated : Error {
  HypothesisViolated(long k, const std::string& w)
      : Error(ErrorKind::HypothesisViolated, w), first_failing_k(k) {}
  long first_failing_k;
};

struct SelfIntersectionImminent : Error {
  explicit SelfIntersectionImminent(const std::string& w)
      : Error(ErrorKind::SelfIntersectionImminent, w) {}
};

}  // namespace moebius
