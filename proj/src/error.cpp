#include "qshift/error.hpp"

namespace qshift {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::NotPolynomial: return "NotPolynomial";
    case ErrorKind::ZeroOperator: return "ZeroOperator";
    case ErrorKind::OrderTooLow: return "OrderTooLow";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::NotMaurerCartan: return "NotMaurerCartan";
    case ErrorKind::TruncationRequired: return "TruncationRequired";
    case ErrorKind::NonIsolated: return "NonIsolated";
    case ErrorKind::NotStabilised: return "NotStabilised";
    case ErrorKind::NoConsistentProfile: return "NoConsistentProfile";
    case ErrorKind::InvalidQuantisation: return "InvalidQuantisation";
    case ErrorKind::SignatureMismatch: return "SignatureMismatch";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace qshift
