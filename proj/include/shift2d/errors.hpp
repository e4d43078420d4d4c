#pragma once

#include <stdexcept>
#include <string>

namespace shift2d {

enum class ErrorCode {
  InvalidArgument,
  NotPsd,
  NonCommuting,
  NonPositiveWeight,
  OutOfClass,
  SchemaError,
  IoError,
  LevelOutOfRange,
  NoStabilization,
  CapTooSmall,
  FormulaMismatch,
  InconsistentLattice,
  Overflow,
  Internal,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace shift2d
