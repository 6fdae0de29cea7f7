#pragma once

#include <stdexcept>
#include <string>

namespace bincube {

/// Argument outside the mathematical domain of a function (e.g. log_gamma(0)).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Request that is well-formed but meaningless or unsupported for the
/// operation (exponents outside the valid region, dimension too large, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure did not reach its tolerance. Carries the best
/// estimate it had when it gave up.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, double best_estimate)
      : std::runtime_error(what), best_estimate_(best_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

}  // namespace bincube
