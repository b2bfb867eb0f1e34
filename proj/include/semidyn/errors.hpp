#pragma once

#include <stdexcept>
#include <string>

namespace semidyn {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad map parameters, bad words, bad scene files, bad params.
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// Numerical failures. The CLI maps these to exit code 3.
class NumericError : public Error {
  public:
    using Error::Error;
};

class PoleHit : public NumericError {
  public:
    PoleHit() : NumericError("rational denominator vanishes at the evaluation point") {}
};

class Overflow : public NumericError {
  public:
    Overflow() : NumericError("result exceeds the representable range") {}
};

class RootFindFailure : public NumericError {
  public:
    using NumericError::NumericError;
};

class BudgetExceeded : public NumericError {
  public:
    using NumericError::NumericError;
};

/// Operation requires the other map class (rational vs transcendental entire).
class WrongClass : public InvalidArgument {
  public:
    using InvalidArgument::InvalidArgument;
};

/// A grid was passed to an operation that needs a grid from a different producer.
class WrongSource : public InvalidArgument {
  public:
    using InvalidArgument::InvalidArgument;
};

/// Backward walk could not leave its start point at all.
class DeadEnd : public NumericError {
  public:
    using NumericError::NumericError;
};

class UnknownExample : public InvalidArgument {
  public:
    using InvalidArgument::InvalidArgument;
};

class HypothesisViolated : public InvalidArgument {
  public:
    using InvalidArgument::InvalidArgument;
};

class IoFailure : public Error {
  public:
    using Error::Error;
};

}  // namespace semidyn
