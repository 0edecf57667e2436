#pragma once

#include <stdexcept>
#include <string>

namespace schemata {

enum class Errc {
  UnknownVertex,
  PartialMap,
  SearchSpaceTooLarge,
  InvalidAutomaton,
  InvalidSchema,
  UnknownVariable,
  RangeViolation,
  ResidualVariables,
  ResidualNondeterminism,
  RangeExcludesOriginal,
  OccurrenceNotConstant,
  EmptyRestriction,
  NotASubset,
  NotStructural,
  NotComposable,
  SchemaMismatch,
  NotASubschema,
  MissingBehavior,
  BehaviorKindMismatch,
  AlphabetMismatch,
  SyntaxError,
  SemanticError,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

// Validation findings are data, not exceptions: each names the broken rule
// and the offending element.
struct Violation {
  std::string rule;
  std::string element;
  std::string detail;

  auto operator<=>(const Violation&) const = default;
};

}  // namespace schemata
