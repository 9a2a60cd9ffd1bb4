#pragma once

#include <stdexcept>
#include <string>

namespace trisim {

/// Bad run configuration: unknown key, invalid value, infeasible setup.
/// The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Runtime numeric failure (singular geometry, non-finite values, step
/// underflow). The CLI maps this to exit code 3.
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Two bodies (or lumps) occupy the same point; force laws are singular.
class SingularityError : public NumericError {
public:
  SingularityError(const std::string& what, int body_a, int body_b)
      : NumericError(what), a(body_a), b(body_b) {}
  int a;
  int b;
};

/// Adaptive step size collapsed below its floor; the problem is too stiff
/// for the controller at the requested tolerance.
class StiffnessError : public NumericError {
public:
  StiffnessError(const std::string& what, double at_time)
      : NumericError(what), t(at_time) {}
  double t;
};

/// Requested quantity is undefined for the given state (e.g. orbital
/// elements of an unbound orbit, contentment of an empty cell).
class DomainError : public NumericError {
public:
  explicit DomainError(const std::string& what) : NumericError(what) {}
};

/// File I/O failure; carries the offending path in the message.
class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace trisim
