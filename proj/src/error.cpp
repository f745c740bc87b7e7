#include "gestark/error.hpp"

namespace gestark {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroDirection:
      return "ZeroDirection";
    case ErrorKind::InvalidWeights:
      return "InvalidWeights";
    case ErrorKind::AsymmetricTensor:
      return "AsymmetricTensor";
    case ErrorKind::InvalidArgument:
      return "InvalidArgument";
    case ErrorKind::MissingSpinOrbitParameter:
      return "MissingSpinOrbitParameter";
    case ErrorKind::MissingHyperfineParameter:
      return "MissingHyperfineParameter";
    case ErrorKind::InvalidProjection:
      return "InvalidProjection";
    case ErrorKind::UnknownOrientation:
      return "UnknownOrientation";
    case ErrorKind::RankDeficient:
      return "RankDeficient";
    case ErrorKind::MissingA:
      return "MissingA";
    case ErrorKind::UnpairedLines:
      return "UnpairedLines";
    case ErrorKind::EmptySweep:
      return "EmptySweep";
    case ErrorKind::CalibrationFailed:
      return "CalibrationFailed";
    case ErrorKind::Config:
      return "ConfigError";
    case ErrorKind::Io:
      return "IoError";
  }
  return "Error";
}

ErrorCategory category_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::RankDeficient:
    case ErrorKind::CalibrationFailed:
    case ErrorKind::UnpairedLines:
      return ErrorCategory::Numeric;
    case ErrorKind::Io:
      return ErrorCategory::Io;
    default:
      return ErrorCategory::Config;
  }
}

}  // namespace gestark
