#pragma once

#include <stdexcept>
#include <string>

namespace extremal {

/// Argument lies outside the range where a bound or transform is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed call: empty grids, empty domains, bad sizes.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative solver (bracketing, quadrature, fixed point) did not converge.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A function object lacks a capability the operation needs (e.g. ν″).
class CapabilityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A checked inequality failed on a concrete row.
class PropertyViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Config or input-file problem; carries the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace extremal
