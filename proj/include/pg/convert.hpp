#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pg/model.hpp"

namespace pg {

enum class UndirectedPolicy {
  keep_once,           // one row in source->destination order, with a warning
  duplicate_reversed,  // a second reversed row; changes row multiplicity
};

enum class EdgeLabelPolicy {
  first_label,      // extra labels are dropped, one warning each
  join_underscore,  // labels joined with '_'
};

struct ConversionOptions {
  UndirectedPolicy undirected = UndirectedPolicy::keep_once;
  EdgeLabelPolicy edge_label = EdgeLabelPolicy::first_label;
  // Namespaces identifiers: node ids gain an 'n' prefix so they can never
  // collide with the generated e1..eN edge ids.
  bool id_prefixing = false;
};

enum class WarningKind {
  dropped_edge_label,
  dropped_node_label,
  dropped_direction,
  dropped_value,
  widened_type,
  unlabeled_edge,
};

/// One piece of dropped or transformed information. Messages reference node
/// and edge indices (1-based, in insertion order), not source lines.
struct ConversionWarning {
  WarningKind kind;
  std::string message;
};

struct ConversionOutput {
  std::vector<std::pair<std::string, std::string>> files;  // filename -> bytes
  std::vector<ConversionWarning> warnings;

  const std::string* file(std::string_view name) const;
};

/// Bulk-load layout for neo4j-admin import: `nodes.csv` with columns
/// `id:ID,:LABEL,<key>:<type>[...]` and `edges.csv` with
/// `:START_ID,:TYPE,:END_ID,...`. Multi-valued properties become
/// ';'-joined array columns; mixed-type keys widen to string.
ConversionOutput to_neo4j(const PropertyGraph& graph, const ConversionOptions& options = {});

/// Gremlin bulk-load CSV for Amazon Neptune: `vertices.csv` with
/// `~id,~label,<key>:<Type>` and `edges.csv` with `~id,~from,~to,~label,...`.
/// Edge ids are generated as e1..eN; edge properties keep the first value.
ConversionOutput to_neptune(const PropertyGraph& graph, const ConversionOptions& options = {});

/// Oracle Labs PGX flat files: `graph.opv` (node id, key, type code, value,
/// one row per property value), `graph.ope` (edge id, endpoints, label,
/// property triples), and a `graph.json` loader config with the declared
/// property schema. Node labels have no slot and are dropped with warnings.
ConversionOutput to_pgx(const PropertyGraph& graph, const ConversionOptions& options = {});

}  // namespace pg
