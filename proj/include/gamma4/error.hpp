#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gamma4 {

enum class ErrorKind {
  InvalidArgument,
  NotAKnot,
  NoInverse,
  NoDirichletClass,
  SearchExhausted,
  FactorizationTooHard,
  PrimalityOutOfRange,
  NotStaircase,
  NotAComplex,
  StructureViolation,
  ConstantTermPlusOne,
  NotCovered,
  NeedsEvenP,
  Inapplicable,
  MatrixTooLarge,
  ComputationTooLarge,
  ParseError,
  InternalError,
};

constexpr std::string_view kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotAKnot: return "NotAKnot";
    case ErrorKind::NoInverse: return "NoInverse";
    case ErrorKind::NoDirichletClass: return "NoDirichletClass";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::FactorizationTooHard: return "FactorizationTooHard";
    case ErrorKind::PrimalityOutOfRange: return "PrimalityOutOfRange";
    case ErrorKind::NotStaircase: return "NotStaircase";
    case ErrorKind::NotAComplex: return "NotAComplex";
    case ErrorKind::StructureViolation: return "StructureViolation";
    case ErrorKind::ConstantTermPlusOne: return "ConstantTermPlusOne";
    case ErrorKind::NotCovered: return "NotCovered";
    case ErrorKind::NeedsEvenP: return "NeedsEvenP";
    case ErrorKind::Inapplicable: return "Inapplicable";
    case ErrorKind::MatrixTooLarge: return "MatrixTooLarge";
    case ErrorKind::ComputationTooLarge: return "ComputationTooLarge";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InternalError: return "InternalError";
  }
  return "Unknown";
}

// Kinds that mean "a configured ceiling was hit" rather than "bad input".
constexpr bool is_ceiling(ErrorKind k) {
  return k == ErrorKind::FactorizationTooHard || k == ErrorKind::SearchExhausted ||
         k == ErrorKind::PrimalityOutOfRange || k == ErrorKind::MatrixTooLarge ||
         k == ErrorKind::ComputationTooLarge;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void check(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) fail(kind, what);
}

}  // namespace gamma4
