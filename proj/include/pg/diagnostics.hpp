#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pg/model.hpp"

namespace pg {

enum class Severity { warning, error };

/// A reader problem anchored to a 1-based line/column in the input.
struct SourceDiagnostic {
  std::size_t line = 0;
  std::size_t column = 0;
  Severity severity = Severity::error;
  std::string message;
};

inline bool has_errors(const std::vector<SourceDiagnostic>& diagnostics) {
  for (const SourceDiagnostic& d : diagnostics) {
    if (d.severity == Severity::error) return true;
  }
  return false;
}

/// Result of reading a document: the graph is present iff no error-severity
/// diagnostic was produced. Readers keep going past recoverable errors so
/// that one pass reports everything.
struct ParseResult {
  std::optional<PropertyGraph> graph;
  std::vector<SourceDiagnostic> diagnostics;

  bool ok() const { return graph.has_value(); }
};

enum class Strictness {
  lenient,  // downgrade recoverable shape problems to warnings
  normal,
  strict,  // reject extensions: quoted node IDs, edges to undeclared nodes
};

struct ReadOptions {
  Strictness strictness = Strictness::normal;
};

}  // namespace pg
