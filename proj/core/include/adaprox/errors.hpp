#ifndef ADAPROX_ERRORS_HPP
#define ADAPROX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace adaprox {

// A point handed to an operation lies outside the domain the operation
// is defined on (e.g. a nonpositive coordinate for the inverse-box metric).
class InvalidPointError : public std::runtime_error {
 public:
  explicit InvalidPointError(const std::string& what) : std::runtime_error(what) {}
};

// A problem, geometry pairing, or experiment configuration is malformed.
class InvalidConfigError : public std::runtime_error {
 public:
  explicit InvalidConfigError(const std::string& what) : std::runtime_error(what) {}
};

// An iterative numerical routine failed to reach its tolerance; carries the
// residual it stopped at.
class NumericalFailureError : public std::runtime_error {
 public:
  NumericalFailureError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// A statistical estimate (rate fit, confidence interval) could not be formed
// from the data provided.
class EstimationError : public std::runtime_error {
 public:
  explicit EstimationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace adaprox

#endif
