#pragma once

#include <stdexcept>
#include <string>

namespace entire {

/// Argument outside the mathematical domain of an operation (n < 0, b <= 0, ...).
/// `parameter()` names the offending parameter when there is one.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what, std::string parameter = {})
      : std::invalid_argument(what), parameter_(std::move(parameter)) {}
  explicit DomainError(const char* what) : DomainError(std::string(what)) {}

  const std::string& parameter() const noexcept { return parameter_; }

 private:
  std::string parameter_;
};

/// Malformed textual space/function spec. `parameter()` names the offending key.
class ParseError : public std::invalid_argument {
 public:
  ParseError(std::string parameter, const std::string& what)
      : std::invalid_argument(what), parameter_(std::move(parameter)) {}

  const std::string& parameter() const noexcept { return parameter_; }

 private:
  std::string parameter_;
};

/// A numerical procedure ran out of budget before meeting its tolerance.
/// Carries the best estimate it had (log scale where the operation is log scale).
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double best_estimate, double achieved)
      : std::runtime_error(what), best_estimate_(best_estimate), achieved_(achieved) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double achieved_tolerance() const noexcept { return achieved_; }

 private:
  double best_estimate_;
  double achieved_;
};

/// Operation needs a coefficient-separable norm and the space does not have one.
class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The space admits no object with the requested property (e.g. inf ||z^n|| > 0
/// rules out a lacunary construction).
class InfeasibleSpaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A coefficient cannot be represented in linear double precision.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Not enough usable sequence entries for a limit estimate.
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace entire
