#pragma once

#include <stdexcept>
#include <string>

namespace opers {

// Exit-code classes shared by the library and the command-line front end.
enum class ErrorCode : int {
  kMalformedInput = 1,
  kPrecondition = 2,
  kInsufficientTruncation = 3,
  kIdentityCheck = 4,
};

class OpersError : public std::runtime_error {
 public:
  OpersError(ErrorCode code, std::string kind, const std::string& what)
      : std::runtime_error(what), code_(code), kind_(std::move(kind)) {}
  ErrorCode code() const { return code_; }
  const std::string& kind() const { return kind_; }

 private:
  ErrorCode code_;
  std::string kind_;
};

class MalformedInput : public OpersError {
 public:
  explicit MalformedInput(const std::string& what)
      : OpersError(ErrorCode::kMalformedInput, "MalformedInput", what) {}
};

class PreconditionError : public OpersError {
 public:
  explicit PreconditionError(const std::string& what)
      : OpersError(ErrorCode::kPrecondition, "PreconditionError", what) {}

 protected:
  PreconditionError(std::string kind, const std::string& what)
      : OpersError(ErrorCode::kPrecondition, std::move(kind), what) {}
};

class NotAnOper : public PreconditionError {
 public:
  explicit NotAnOper(const std::string& what) : PreconditionError("NotAnOper", what) {}
};

class InsufficientTruncation : public OpersError {
 public:
  explicit InsufficientTruncation(const std::string& what)
      : OpersError(ErrorCode::kInsufficientTruncation, "InsufficientTruncation", what) {}
};

class IdentityCheckFailure : public OpersError {
 public:
  explicit IdentityCheckFailure(const std::string& what)
      : OpersError(ErrorCode::kIdentityCheck, "IdentityCheckFailure", what) {}
};

}  // namespace opers
