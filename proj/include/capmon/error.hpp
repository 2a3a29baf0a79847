#pragma once

#include <stdexcept>
#include <string>

namespace capmon {

enum class ErrorKind {
  InvalidConfig,
  InvalidDegradation,
  DiscontinuousConduction,
  Convergence,
  Parse,
  InsufficientResolution,
  MalformedFrame,
  Estimation,
  Calibration,
  Batch,
  DegenerateRegression,
  NotCalibrated,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidConfig: return "invalid-config";
    case ErrorKind::InvalidDegradation: return "invalid-degradation";
    case ErrorKind::DiscontinuousConduction: return "discontinuous-conduction";
    case ErrorKind::Convergence: return "convergence";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::InsufficientResolution: return "insufficient-resolution";
    case ErrorKind::MalformedFrame: return "malformed-frame";
    case ErrorKind::Estimation: return "estimation";
    case ErrorKind::Calibration: return "calibration";
    case ErrorKind::Batch: return "batch";
    case ErrorKind::DegenerateRegression: return "degenerate-regression";
    case ErrorKind::NotCalibrated: return "not-calibrated";
  }
  return "unknown";
}

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace capmon
