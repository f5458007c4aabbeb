#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace devsurf {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept = 0;
};

/// Malformed user input: bad curve text, bad argument values. CLI exit code 1.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A geometric or numeric precondition failed at evaluation time. CLI exit code 2.
class MathError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failures. CLI exit code 3.
class IoError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "IoError"; }
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t position, std::string expected)
      : InputError("parse error at position " + std::to_string(position) +
                   ": expected " + expected),
        position_(position),
        expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }
  const char* kind() const noexcept override { return "ParseError"; }

 private:
  std::size_t position_;
  std::string expected_;
};

class ArityError : public InputError {
 public:
  explicit ArityError(std::size_t found)
      : InputError("a curve needs exactly 3 components, found " + std::to_string(found)),
        found_(found) {}
  std::size_t found() const noexcept { return found_; }
  const char* kind() const noexcept override { return "ArityError"; }

 private:
  std::size_t found_;
};

class InvalidArgument : public InputError {
 public:
  using InputError::InputError;
  const char* kind() const noexcept override { return "InvalidArgument"; }
};

/// A function was evaluated outside its natural domain.
class DomainError : public MathError {
 public:
  DomainError(std::string node, double value)
      : MathError("domain error in '" + node + "' at argument value " + std::to_string(value)),
        node_(std::move(node)),
        value_(value) {}

  const std::string& node() const noexcept { return node_; }
  double value() const noexcept { return value_; }
  const char* kind() const noexcept override { return "DomainError"; }

 private:
  std::string node_;
  double value_;
};

#define DEVSURF_MATH_ERROR(Name)                                  \
  class Name : public MathError {                                 \
   public:                                                        \
    using MathError::MathError;                                   \
    const char* kind() const noexcept override { return #Name; } \
  }

DEVSURF_MATH_ERROR(SingularPoint);
DEVSURF_MATH_ERROR(CurvatureVanishes);
DEVSURF_MATH_ERROR(TorsionVanishes);
DEVSURF_MATH_ERROR(ZeroVector);
DEVSURF_MATH_ERROR(SurfaceSingularPoint);
DEVSURF_MATH_ERROR(CylindricalRuling);
DEVSURF_MATH_ERROR(EmptyMesh);

#undef DEVSURF_MATH_ERROR

class TooFewSamples : public InputError {
 public:
  using InputError::InputError;
  const char* kind() const noexcept override { return "TooFewSamples"; }
};

}  // namespace devsurf
