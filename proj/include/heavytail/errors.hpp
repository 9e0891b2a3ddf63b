#pragma once

#include <stdexcept>
#include <string>

namespace heavytail {

/// Invalid distribution or experiment parameters (shape <= 0, weights off the
/// simplex, probabilities outside [0,1], ...).
class ParameterError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Argument outside an operation's mathematical domain, e.g. a quantile level
/// not in (0,1) or a bounds query outside the constraint hull.
class DomainError : public std::domain_error {
  using std::domain_error::domain_error;
};

/// A numerical routine could not reach the requested accuracy. Carries the
/// error estimate it did achieve.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Too few usable points to form a verdict.
class InsufficientDataError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A computed result violated an internal cross-check (e.g. the class
/// membership chain order). Indicates a bug, not bad input.
class ConsistencyError : public std::logic_error {
  using std::logic_error::logic_error;
};

/// Requested computation is outside what the toolkit classifies
/// (e.g. stable mixture parameters for alpha > 1).
class UnsupportedError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace heavytail
