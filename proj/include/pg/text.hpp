#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pg/diagnostics.hpp"
#include "pg/model.hpp"

namespace pg {

/// One run of characters inside a field. Quoted runs have their escapes
/// resolved and may contain whitespace; column points at the run's first
/// source character (the opening quote for quoted runs).
struct FieldSegment {
  std::string text;
  bool quoted = false;
  std::size_t column = 0;
};

/// A whitespace-delimited field. `country:"United States"` is one field of
/// two segments: the unquoted `country:` and the quoted content.
struct Field {
  std::vector<FieldSegment> segments;

  std::size_t column() const { return segments.front().column; }
  std::string joined() const;
  bool any_quoted() const;
  /// True when the field is a single unquoted run with exactly this text.
  bool is_plain(std::string_view text) const;
};

/// Splits one line into fields. An unquoted '#' starts a comment; blank and
/// comment-only lines yield an empty sequence. Returns nullopt after
/// appending a diagnostic for lexical errors (unterminated quote, bad
/// escape), which abandon the whole line.
std::optional<std::vector<Field>> tokenize_line(std::string_view raw_line, std::size_t line_no,
                                                std::vector<SourceDiagnostic>& diagnostics);

struct NodeRecord {
  NodeId id;
  std::vector<std::string> labels;
  PropertyMap properties;
};

struct EdgeRecord {
  NodeId source;
  NodeId destination;
  bool undirected = false;
  std::vector<std::string> labels;
  PropertyMap properties;
  // Columns of the endpoint fields, kept for later diagnostics.
  std::size_t source_column = 0;
  std::size_t destination_column = 0;
};

using Statement = std::variant<NodeRecord, EdgeRecord>;

/// Classifies a non-empty field sequence as a node or edge statement. The
/// second field being exactly `--` or `->` makes it an edge; remaining
/// fields are labels first, then properties. Returns nullopt after
/// appending diagnostics on any violation.
std::optional<Statement> parse_statement(const std::vector<Field>& fields, std::size_t line_no,
                                         const ReadOptions& options,
                                         std::vector<SourceDiagnostic>& diagnostics);

/// Lexes one value token: quoted content is always text; unquoted tokens
/// matching integer or float syntax become numbers; everything else is
/// text. Returns nullopt and fills *error when a number is out of range.
std::optional<Value> parse_value(std::string_view raw, bool quoted, std::string* error = nullptr);

/// True when the token would lex as an integer or float.
bool lexes_as_number(std::string_view text);

/// Parses a whole flat-text document. Node lines merge into existing nodes;
/// edge lines append edges, creating bare endpoint nodes as needed.
ParseResult parse_pg(std::string_view text, const ReadOptions& options = {});

/// Deterministic printer: node lines in insertion order, then edge lines,
/// single-space separators, minimal quoting. Output is byte-identical for
/// equal graphs with equal stored orders.
std::string serialize_pg(const PropertyGraph& graph);

}  // namespace pg
