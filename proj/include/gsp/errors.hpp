#pragma once

#include <stdexcept>
#include <string>

namespace gsp {

enum class ErrorKind {
  NotPrime,
  ReducibleModulus,
  BadModulus,
  PrecisionIncrease,
  PrecisionCeiling,
  SpecMismatch,
  NotInvertible,
  NotSymplectic,
  PrimeTooSmall,
  NotUnipotent,
  NotInU1,
  NotARoot,
  NotSemisimple,
  HypothesesNotVerified,
  NotTame,
  NotACocycle,
  MissingDesignation,
  PlanInvalid,
  NotASquare,
  ConfigError,
  Unsupported,
};

const char* error_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gsp
