#pragma once

#include <stdexcept>
#include <string>

namespace gestark {

enum class ErrorKind {
  ZeroDirection,
  InvalidWeights,
  AsymmetricTensor,
  InvalidArgument,
  MissingSpinOrbitParameter,
  MissingHyperfineParameter,
  InvalidProjection,
  UnknownOrientation,
  RankDeficient,
  MissingA,
  UnpairedLines,
  EmptySweep,
  CalibrationFailed,
  Config,
  Io,
};

// Category used by the command line front end to pick an exit code.
enum class ErrorCategory { Config, Numeric, Io };

const char* to_string(ErrorKind kind);
ErrorCategory category_of(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  ErrorCategory category() const noexcept { return category_of(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace gestark
