#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace incidence {

enum class ErrorCode {
  parse_error,
  non_prime_modulus,
  ring_mismatch,
  not_invertible,
  unknown_element,
  duplicate_element,
  not_comparable,
  preorder_mismatch,
  size_limit,
  unsupported_ring,
  dimension_mismatch,
  not_transitive,
  not_a_derivation,
};

inline std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::non_prime_modulus: return "NonPrimeModulus";
    case ErrorCode::ring_mismatch: return "RingMismatch";
    case ErrorCode::not_invertible: return "NotInvertible";
    case ErrorCode::unknown_element: return "UnknownElement";
    case ErrorCode::duplicate_element: return "DuplicateElement";
    case ErrorCode::not_comparable: return "NotComparable";
    case ErrorCode::preorder_mismatch: return "PreorderMismatch";
    case ErrorCode::size_limit: return "SizeLimit";
    case ErrorCode::unsupported_ring: return "UnsupportedRing";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::not_transitive: return "NotTransitive";
    case ErrorCode::not_a_derivation: return "NotADerivation";
  }
  return "Error";
}

/// Every failure raised by the library. `code()` identifies the kind; the
/// message starts with the kind's name.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace incidence
