#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fairdiv {

enum class ErrorCode {
  ParseError,
  DimensionMismatch,
  NegativeEntry,
  TooSmall,
  NullRow,
  NullColumn,
  BadsAllHarmless,
  InfeasibleAllocation,
  InvalidArgument,
  Infeasible,
  Unbounded,
  NotEfficient,
  ZeroUtilityOnCycle,
  NonTreeInput,
  IsolatedAgent,
  TooLargeToEnumerate,
  DisconnectedItem,
  InvalidSubproblem,
  NotALostBid,
  WrongDirection,
  GraphChanged,
  SelectionNotEF,
  UnknownInstance,
  KindMismatch,
  VerificationFailed,
  Internal,
};

std::string_view error_code_name(ErrorCode code);

/// Base exception for every library failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::optional<std::size_t> agent = std::nullopt,
        std::optional<std::size_t> item = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> agent() const noexcept { return agent_; }
  std::optional<std::size_t> item() const noexcept { return item_; }

  /// Input problem is malformed (maps to exit code 2 / HTTP 422).
  bool is_validation() const noexcept;

 private:
  ErrorCode code_;
  std::optional<std::size_t> agent_;
  std::optional<std::size_t> item_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class ResourceLimitError : public Error {
 public:
  explicit ResourceLimitError(const std::string& message)
      : Error(ErrorCode::TooLargeToEnumerate, message) {}
};

}  // namespace fairdiv
