#pragma once

#include <stdexcept>
#include <string>

namespace spinquasi {

enum class ErrorKind {
  NotHermitian,
  NoConvergence,
  InvalidArguments,
  OutOfRange,
  TraceNotOne,
  NotPositive,
  NonRealMoment,
  IllConditioned,
  WrongSpin,
  UndefinedMeanSpinDirection,
  MalformedInput,
  InternalInvariant,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::InvalidArguments: return "InvalidArguments";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::TraceNotOne: return "TraceNotOne";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NonRealMoment: return "NonRealMoment";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::WrongSpin: return "WrongSpin";
    case ErrorKind::UndefinedMeanSpinDirection: return "UndefinedMeanSpinDirection";
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

}  // namespace spinquasi
