#ifndef DOMINO_ERROR_HPP
#define DOMINO_ERROR_HPP

#include <stdexcept>
#include <string>

namespace domino {

enum class ErrorCode {
  NotSquare,
  AsymmetricEntry,
  NonzeroDiagonal,
  DimensionMismatch,
  IndexOutOfRange,
  PartitionMismatch,
  NoConvergence,
  TooLarge,
  NotDivisible,
  InvalidSpec,
  SpecMismatch,
  InvalidConfig,
  ParseError,
  IoError,
};

const char* error_code_name(ErrorCode code);

/// All library failures surface as this exception; the code identifies
/// the failure class, the message carries the offending indices/values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace domino

#endif
