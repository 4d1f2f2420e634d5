#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace oreext {

/// Index of an element (or operator) in its declared order.
using Elem = std::uint32_t;

/// A unary map on a finite set, stored as its value table.
using Table = std::vector<Elem>;

/// Sorted, duplicate-free set of element indices.
using ElementSet = std::vector<Elem>;

enum class ErrorKind {
  NotAGroup,
  NotEndomorphism,
  BadZeroOperator,
  EmptySet,
  NotStable,
  MismatchedOperators,
  NotAdditive,
  NotAStable,
  SortMismatch,
  MissingCompanionMaps,
  HypothesisNotMet,
  DegreeTooHigh,
  NotLeftDistributive,
  NotRightIdeal,
  UnknownId,
  BadParams,
  ClaimFailed,
  SyntaxError,
  SchemaError,
  SemanticError,
  Internal,
};

std::string_view to_string(ErrorKind kind);

/// Failure of a precondition or axiom. The witness is a flattened tuple of
/// element identifiers in declared order.
class AlgebraError : public std::runtime_error {
 public:
  AlgebraError(ErrorKind kind, const std::string& message,
               std::vector<std::string> witness = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::string>& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<std::string> witness_;
};

/// A labelled counterexample attached to a failed check.
struct Witness {
  std::string what;
  std::vector<std::string> tuple;

  friend bool operator==(const Witness&, const Witness&) = default;
};

}  // namespace oreext
