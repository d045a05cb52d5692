#include "fairdiv/error.hpp"

namespace fairdiv {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::NullRow: return "NullRow";
    case ErrorCode::NullColumn: return "NullColumn";
    case ErrorCode::BadsAllHarmless: return "BadsAllHarmless";
    case ErrorCode::InfeasibleAllocation: return "InfeasibleAllocation";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::NotEfficient: return "NotEfficient";
    case ErrorCode::ZeroUtilityOnCycle: return "ZeroUtilityOnCycle";
    case ErrorCode::NonTreeInput: return "NonTreeInput";
    case ErrorCode::IsolatedAgent: return "IsolatedAgent";
    case ErrorCode::TooLargeToEnumerate: return "TooLargeToEnumerate";
    case ErrorCode::DisconnectedItem: return "DisconnectedItem";
    case ErrorCode::InvalidSubproblem: return "InvalidSubproblem";
    case ErrorCode::NotALostBid: return "NotALostBid";
    case ErrorCode::WrongDirection: return "WrongDirection";
    case ErrorCode::GraphChanged: return "GraphChanged";
    case ErrorCode::SelectionNotEF: return "SelectionNotEF";
    case ErrorCode::UnknownInstance: return "UnknownInstance";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::optional<std::size_t> agent,
             std::optional<std::size_t> item)
    : std::runtime_error(message), code_(code), agent_(agent), item_(item) {}

bool Error::is_validation() const noexcept {
  switch (code_) {
    case ErrorCode::ParseError:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::NegativeEntry:
    case ErrorCode::TooSmall:
    case ErrorCode::NullRow:
    case ErrorCode::NullColumn:
    case ErrorCode::BadsAllHarmless:
    case ErrorCode::InfeasibleAllocation:
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidSubproblem:
    case ErrorCode::NotALostBid:
    case ErrorCode::WrongDirection:
    case ErrorCode::UnknownInstance:
    case ErrorCode::KindMismatch:
    case ErrorCode::NonTreeInput:
    case ErrorCode::IsolatedAgent:
    case ErrorCode::DisconnectedItem:
      return true;
    default:
      return false;
  }
}

}  // namespace fairdiv
