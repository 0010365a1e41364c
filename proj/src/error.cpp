#include "virteq/error.hpp"

#include <cstdlib>
#include <string>

namespace virteq {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::DanglingRef: return "DanglingRef";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::MissingComposite: return "MissingComposite";
    case ErrorKind::NotComposable: return "NotComposable";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::AssocViolation: return "AssocViolation";
    case ErrorKind::IdentityViolation: return "IdentityViolation";
    case ErrorKind::NotFunctorial: return "NotFunctorial";
    case ErrorKind::NotParallel: return "NotParallel";
    case ErrorKind::NaturalityViolation: return "NaturalityViolation";
    case ErrorKind::EnumerationBudgetExceeded: return "EnumerationBudgetExceeded";
    case ErrorKind::CodomainMismatch: return "CodomainMismatch";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::MiddleMismatch: return "MiddleMismatch";
    case ErrorKind::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorKind::ActionNotTotal: return "ActionNotTotal";
    case ErrorKind::ActionLawViolation: return "ActionLawViolation";
    case ErrorKind::NotDiscreteFibration: return "NotDiscreteFibration";
    case ErrorKind::NonIdentityBoundary: return "NonIdentityBoundary";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::OracleDisagreement: return "OracleDisagreement";
    case ErrorKind::NotApplicable: return "NotApplicable";
  }
  return "Unknown";
}

std::size_t enumeration_budget() {
  constexpr std::size_t kDefault = 1'000'000;
  const char* env = std::getenv("VIRTEQ_MAX_ENUM");
  if (env == nullptr || *env == '\0') return kDefault;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') return kDefault;
  return static_cast<std::size_t>(v);
}

void Budget::fail() const {
  throw Error(ErrorKind::EnumerationBudgetExceeded,
              std::string(what_) + " visited more than " + std::to_string(limit_) +
                  " candidates (raise VIRTEQ_MAX_ENUM)");
}

}  // namespace virteq
