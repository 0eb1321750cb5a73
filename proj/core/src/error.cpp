#include "qdi/error.hpp"

namespace qdi {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::InvalidNetlist: return "INVALID_NETLIST";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::NotPrimary: return "NOT_PRIMARY";
    case ErrorCode::NonQuiescent: return "NON_QUIESCENT";
    case ErrorCode::IllegalOutput: return "ILLEGAL_OUTPUT";
    case ErrorCode::StuckPhase: return "STUCK_PHASE";
    case ErrorCode::Empty: return "EMPTY";
    case ErrorCode::MissingAreaEntry: return "MISSING_AREA_ENTRY";
    case ErrorCode::GroupMismatch: return "GROUP_MISMATCH";
    case ErrorCode::NotAGeneratedMultiplier: return "NOT_A_GENERATED_MULTIPLIER";
  }
  return "UNKNOWN";
}

}  // namespace qdi
