#pragma once

#include <stdexcept>
#include <string>

namespace qwmix {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A constructor or operation received a parameter outside its valid range.
/// `field()` names the offending parameter.
class InvalidParameter : public Error {
 public:
  InvalidParameter(std::string field, const std::string& what)
      : Error("invalid parameter '" + field + "': " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// The support digraph of a chain is not strongly connected.
class ReducibleChain : public Error {
 public:
  ReducibleChain(std::size_t from, std::size_t to)
      : Error("reducible chain: state " + std::to_string(to) + " is not reachable from state " +
              std::to_string(from)),
        from_(from),
        to_(to) {}
  std::size_t from() const { return from_; }
  std::size_t to() const { return to_; }

 private:
  std::size_t from_, to_;
};

/// D^-1 P D is not symmetric.
class NonReversible : public Error {
 public:
  explicit NonReversible(double max_asymmetry)
      : Error("non-reversible chain: max |D^-1PD - (D^-1PD)^T| = " + std::to_string(max_asymmetry)),
        max_asymmetry_(max_asymmetry) {}
  double max_asymmetry() const { return max_asymmetry_; }

 private:
  double max_asymmetry_;
};

/// A dense state space would exceed the configured cap.
class DimensionCap : public Error {
 public:
  DimensionCap(std::size_t requested, std::size_t cap)
      : Error("dimension " + std::to_string(requested) + " exceeds cap " + std::to_string(cap)) {}
};

/// A documented hypothesis of an operation does not hold for the given input.
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

}  // namespace qwmix
