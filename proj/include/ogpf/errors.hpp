#ifndef OGPF_ERRORS_HPP
#define OGPF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ogpf {

// Base of every error thrown by the library. The CLI maps any of these to
// exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed instance file.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Instance parsed but violates a structural invariant. The message names
// the invariant and the offending entity.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// A big-M constant would be unbounded.
class MissingBounds : public Error {
 public:
  using Error::Error;
};

// Recovered flow outside the PWA span.
class OutOfRange : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, double required)
      : Error(what), required_(required) {}
  double required() const { return required_; }

 private:
  double required_;
};

class AllInfeasible : public Error {
 public:
  using Error::Error;
};

// Certificate claimed Optimal but the assembled point fails the feasibility
// re-check. Always an implementation bug.
class CertificationBug : public Error {
 public:
  using Error::Error;
};

}  // namespace ogpf

#endif  // OGPF_ERRORS_HPP
