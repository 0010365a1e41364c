#pragma once

#include <atomic>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace virteq {

enum class ErrorKind {
  ParseError,
  ValidationError,
  DanglingRef,
  DuplicateName,
  ArityMismatch,
  MissingComposite,
  NotComposable,
  TypeMismatch,
  AssocViolation,
  IdentityViolation,
  NotFunctorial,
  NotParallel,
  NaturalityViolation,
  EnumerationBudgetExceeded,
  CodomainMismatch,
  DomainMismatch,
  MiddleMismatch,
  BoundaryMismatch,
  ActionNotTotal,
  ActionLawViolation,
  NotDiscreteFibration,
  NonIdentityBoundary,
  ShapeMismatch,
  OracleDisagreement,
  NotApplicable,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Maximum number of candidate structures a single enumeration may visit.
/// Read from VIRTEQ_MAX_ENUM on every call; defaults to 1'000'000.
std::size_t enumeration_budget();

/// Shared counter for one enumeration. Safe to tick from several threads; the
/// total number of ticks of a full search does not depend on visit order, so
/// exceeding the limit is deterministic.
class Budget {
 public:
  explicit Budget(const char* what) : limit_(enumeration_budget()), what_(what) {}
  Budget(const char* what, std::size_t limit) : limit_(limit), what_(what) {}

  void tick(std::size_t n = 1) {
    if (count_.fetch_add(n, std::memory_order_relaxed) + n > limit_) fail();
  }
  std::size_t used() const { return count_.load(std::memory_order_relaxed); }
  std::size_t limit() const { return limit_; }

 private:
  [[noreturn]] void fail() const;

  std::atomic<std::size_t> count_{0};
  std::size_t limit_;
  const char* what_;
};

}  // namespace virteq
