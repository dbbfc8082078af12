#pragma once

#include <stdexcept>
#include <string>

namespace bgl {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid grid, run configuration or scenario parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Operation requested on a grid type it does not support.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input data violate an operation's preconditions.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Time step exceeds the advective CFL cap.
class StepSizeError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values appeared in the tendencies.
class BlowupError : public Error {
 public:
  BlowupError(double t, const std::string& what) : Error(what), time_(t) {}
  double time() const { return time_; }

 private:
  double time_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace bgl
