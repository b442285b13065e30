#pragma once

#include <stdexcept>
#include <string>

namespace mmsurv {

enum class ErrorKind {
  InvalidConfig,
  InvalidRecord,
  DegenerateCohort,
  BackendUnavailable,
  BackendRejected,
  IncompleteTrace,
  NumericalError,
  UndefinedMetric,
  IoError,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::InvalidRecord: return "InvalidRecord";
    case ErrorKind::DegenerateCohort: return "DegenerateCohort";
    case ErrorKind::BackendUnavailable: return "BackendUnavailable";
    case ErrorKind::BackendRejected: return "BackendRejected";
    case ErrorKind::IncompleteTrace: return "IncompleteTrace";
    case ErrorKind::NumericalError: return "NumericalError";
    case ErrorKind::UndefinedMetric: return "UndefinedMetric";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mmsurv
