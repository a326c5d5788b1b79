#pragma once

#include <string>
#include <string_view>

#include "pg/diagnostics.hpp"
#include "pg/model.hpp"

namespace pg {

/// Reads a JSON-PG document: `nodes` and `edges` arrays of objects. A node
/// needs `id`; an edge needs `from` and `to`; `labels`, `properties`, and
/// `undirected` (default false) are optional. Property values must be
/// non-empty arrays of strings/numbers; lenient mode coerces bare scalars
/// to one-element arrays and downgrades unknown members to warnings.
ParseResult read_json_pg(std::string_view text, const ReadOptions& options = {});

/// Canonical writer: members in fixed order (id/labels/properties, and
/// from/to/undirected/labels/properties with `undirected` emitted only when
/// true), labels and properties always present, 2-space indentation,
/// trailing newline. Byte-deterministic for a fixed graph.
std::string write_json_pg(const PropertyGraph& graph);

}  // namespace pg
