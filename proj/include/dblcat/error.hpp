#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dbl {

// Every failure the library reports carries a stable code (used by the C API
// and the CLI exit paths) plus the cells that witness the problem.
enum class ErrorCode {
  DanglingReference,
  MissingComposite,
  AxiomViolation,
  IncompatibleGrid,
  NotAFunctor,
  Mismatch,
  NotAnEquivalence,
  NotInvertible,
  NonUnique,
  SourceNotWhi,
  GrayTensorInfinite,
  NotInjective,
  SaturationCapExceeded,
  DepthExceeded,
  CoherenceViolation,
  ConstructionMismatch,
  PreconditionFailed,
  ChoiceExhausted,
  ParseError,
  UnknownName,
  Internal,
};

const char* to_string(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::vector<std::string> witness = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        witness_(std::move(witness)) {}

  ErrorCode code() const { return code_; }
  const std::vector<std::string>& witness() const { return witness_; }

 private:
  ErrorCode code_;
  std::vector<std::string> witness_;
};

}  // namespace dbl
