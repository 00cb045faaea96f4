#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qshift {

enum class ErrorKind {
  ZeroPolynomial,
  NotPolynomial,
  ZeroOperator,
  OrderTooLow,
  ArityMismatch,
  NotMaurerCartan,
  TruncationRequired,
  NonIsolated,
  NotStabilised,
  NoConsistentProfile,
  InvalidQuantisation,
  SignatureMismatch,
  SyntaxError,
  UnknownVariable,
  InvalidArgument,
};

std::string_view error_kind_name(ErrorKind kind);

// Every failure raised by the library carries a machine-readable kind so the
// CLI can map it onto a report without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qshift
