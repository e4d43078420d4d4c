#include "shift2d/errors.hpp"

namespace shift2d {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotPsd: return "NotPsd";
    case ErrorCode::NonCommuting: return "NonCommuting";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::OutOfClass: return "OutOfClass";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorCode::NoStabilization: return "NoStabilization";
    case ErrorCode::CapTooSmall: return "CapTooSmall";
    case ErrorCode::FormulaMismatch: return "FormulaMismatch";
    case ErrorCode::InconsistentLattice: return "InconsistentLattice";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace shift2d
