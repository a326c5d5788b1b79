#include "pg/convert.hpp"

#include <cstddef>
#include <string>

#include "json.hpp"

namespace pg {

namespace {

enum class ColumnType { text, integer, real };

ColumnType value_type(const Value& v) {
  if (v.is_text()) return ColumnType::text;
  if (v.is_integer()) return ColumnType::integer;
  return ColumnType::real;
}

const char* neo4j_type(ColumnType t) {
  switch (t) {
    case ColumnType::integer: return "long";
    case ColumnType::real: return "double";
    default: return "string";
  }
}

const char* neptune_type(ColumnType t) {
  switch (t) {
    case ColumnType::integer: return "Int";
    case ColumnType::real: return "Double";
    default: return "String";
  }
}

const char* pgx_type(ColumnType t) {
  switch (t) {
    case ColumnType::integer: return "integer";
    case ColumnType::real: return "double";
    default: return "string";
  }
}

// Row type codes for the PGX property files: 1=string, 2=integer, 3=double.
int pgx_type_code(const Value& v) {
  if (v.is_text()) return 1;
  if (v.is_integer()) return 2;
  return 3;
}

struct Column {
  std::string key;
  ColumnType type = ColumnType::text;
  bool mixed = false;
  bool multi = false;
};

// First-seen key order; a key whose values mix types widens to string.
template <typename Range, typename GetMap>
std::vector<Column> plan_columns(const Range& range, GetMap get_map) {
  std::vector<Column> columns;
  auto find = [&](const std::string& key) -> std::size_t {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (columns[i].key == key) return i;
    }
    return columns.size();
  };
  for (const auto& element : range) {
    for (const auto& [key, values] : get_map(element).entries()) {
      std::size_t i = find(key);
      if (i == columns.size()) columns.push_back({key, value_type(values.front()), false, false});
      Column& col = columns[i];
      for (const Value& v : values) {
        if (value_type(v) != col.type) col.mixed = true;
      }
      if (values.size() > 1) col.multi = true;
    }
  }
  for (Column& col : columns) {
    if (col.mixed) col.type = ColumnType::text;
  }
  return columns;
}

std::string csv_cell(std::string_view raw) {
  if (raw.find_first_of(",\";\n\r") == std::string_view::npos) return std::string(raw);
  std::string out;
  out.reserve(raw.size() + 2);
  out += '"';
  for (char c : raw) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void append_csv_row(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out += ',';
    out += csv_cell(cells[i]);
  }
  out += '\n';
}

std::string join_semicolon(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += ';';
    out += parts[i];
  }
  return out;
}

std::string join_values(const std::vector<Value>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ';';
    out += value_to_string(values[i]);
  }
  return out;
}

std::string node_id_cell(const NodeId& id, const ConversionOptions& options) {
  std::string raw = id.to_string();
  return options.id_prefixing ? "n" + raw : raw;
}

std::string describe_edge(const Edge& edge, std::size_t index) {
  return "edge " + std::to_string(index) + " (" + edge.source.to_string() +
         (edge.undirected ? " -- " : " -> ") + edge.destination.to_string() + ")";
}

std::string describe_node(const Node& node, std::size_t index) {
  return "node " + std::to_string(index) + " (id " + node.id.to_string() + ")";
}

void warn(ConversionOutput& out, WarningKind kind, std::string message) {
  out.warnings.push_back({kind, std::move(message)});
}

void warn_widened(ConversionOutput& out, const std::vector<Column>& columns,
                  const std::string& where) {
  for (const Column& col : columns) {
    if (col.mixed) {
      warn(out, WarningKind::widened_type,
           where + ": property '" + col.key + "' mixes value types across the graph; widened to string");
    }
  }
}

// Resolves the single label cell for an edge row and records what was lost.
// empty_substitute is "RELATED" for Neo4j and "" for the other targets.
std::string edge_label_cell(ConversionOutput& out, const Edge& edge, std::size_t index,
                            EdgeLabelPolicy policy, const std::string& empty_substitute) {
  if (edge.labels.empty()) {
    if (empty_substitute.empty()) {
      warn(out, WarningKind::unlabeled_edge,
           describe_edge(edge, index) + ": edge has no label; label column left empty");
    } else {
      warn(out, WarningKind::unlabeled_edge,
           describe_edge(edge, index) + ": edge has no label; using '" + empty_substitute + "'");
    }
    return empty_substitute;
  }
  if (policy == EdgeLabelPolicy::join_underscore) {
    std::string joined = edge.labels.front();
    for (std::size_t i = 1; i < edge.labels.size(); ++i) joined += "_" + edge.labels[i];
    return joined;
  }
  for (std::size_t i = 1; i < edge.labels.size(); ++i) {
    warn(out, WarningKind::dropped_edge_label,
         describe_edge(edge, index) + ": dropped label '" + edge.labels[i] +
             "' (first-label policy)");
  }
  return edge.labels.front();
}

void warn_kept_once(ConversionOutput& out, const Edge& edge, std::size_t index) {
  warn(out, WarningKind::dropped_direction,
       describe_edge(edge, index) + ": undirected edge written as directed (keep-once policy)");
}

}  // namespace

const std::string* ConversionOutput::file(std::string_view name) const {
  for (const auto& [filename, content] : files) {
    if (filename == name) return &content;
  }
  return nullptr;
}

ConversionOutput to_neo4j(const PropertyGraph& graph, const ConversionOptions& options) {
  ConversionOutput out;

  auto node_columns = plan_columns(graph.nodes(), [](const Node& n) -> const PropertyMap& {
    return n.properties;
  });
  warn_widened(out, node_columns, "nodes.csv");

  std::string nodes_csv;
  {
    std::vector<std::string> header{"id:ID", ":LABEL"};
    for (const Column& col : node_columns) {
      header.push_back(col.key + ":" + neo4j_type(col.type) + (col.multi ? "[]" : ""));
    }
    append_csv_row(nodes_csv, header);
    for (const Node& node : graph.nodes()) {
      std::vector<std::string> row{node_id_cell(node.id, options), join_semicolon(node.labels)};
      for (const Column& col : node_columns) {
        const std::vector<Value>* values = node.properties.find(col.key);
        row.push_back(values ? join_values(*values) : "");
      }
      append_csv_row(nodes_csv, row);
    }
  }

  auto edge_columns = plan_columns(graph.edges(), [](const Edge& e) -> const PropertyMap& {
    return e.properties;
  });
  warn_widened(out, edge_columns, "edges.csv");

  std::string edges_csv;
  {
    std::vector<std::string> header{":START_ID", ":TYPE", ":END_ID"};
    for (const Column& col : edge_columns) {
      header.push_back(col.key + ":" + neo4j_type(col.type) + (col.multi ? "[]" : ""));
    }
    append_csv_row(edges_csv, header);
    std::size_t index = 0;
    for (const Edge& edge : graph.edges()) {
      ++index;
      std::string type = edge_label_cell(out, edge, index, options.edge_label, "RELATED");
      std::vector<std::string> cells;
      for (const Column& col : edge_columns) {
        const std::vector<Value>* values = edge.properties.find(col.key);
        cells.push_back(values ? join_values(*values) : "");
      }
      auto emit = [&](const NodeId& from, const NodeId& to) {
        std::vector<std::string> row{node_id_cell(from, options), type,
                                     node_id_cell(to, options)};
        row.insert(row.end(), cells.begin(), cells.end());
        append_csv_row(edges_csv, row);
      };
      if (edge.undirected && options.undirected == UndirectedPolicy::keep_once) {
        warn_kept_once(out, edge, index);
      }
      emit(edge.source, edge.destination);
      if (edge.undirected && options.undirected == UndirectedPolicy::duplicate_reversed) {
        emit(edge.destination, edge.source);
      }
    }
  }

  out.files.emplace_back("nodes.csv", std::move(nodes_csv));
  out.files.emplace_back("edges.csv", std::move(edges_csv));
  return out;
}

ConversionOutput to_neptune(const PropertyGraph& graph, const ConversionOptions& options) {
  ConversionOutput out;

  auto node_columns = plan_columns(graph.nodes(), [](const Node& n) -> const PropertyMap& {
    return n.properties;
  });
  warn_widened(out, node_columns, "vertices.csv");

  std::string vertices_csv;
  {
    std::vector<std::string> header{"~id", "~label"};
    for (const Column& col : node_columns) {
      header.push_back(col.key + ":" + neptune_type(col.type));
    }
    append_csv_row(vertices_csv, header);
    for (const Node& node : graph.nodes()) {
      std::vector<std::string> row{node_id_cell(node.id, options), join_semicolon(node.labels)};
      for (const Column& col : node_columns) {
        const std::vector<Value>* values = node.properties.find(col.key);
        row.push_back(values ? join_values(*values) : "");
      }
      append_csv_row(vertices_csv, row);
    }
  }

  auto edge_columns = plan_columns(graph.edges(), [](const Edge& e) -> const PropertyMap& {
    return e.properties;
  });
  warn_widened(out, edge_columns, "edges.csv");

  std::string edges_csv;
  {
    std::vector<std::string> header{"~id", "~from", "~to", "~label"};
    for (const Column& col : edge_columns) {
      header.push_back(col.key + ":" + neptune_type(col.type));
    }
    append_csv_row(edges_csv, header);
    std::size_t index = 0;
    std::size_t row_id = 0;
    for (const Edge& edge : graph.edges()) {
      ++index;
      std::string label = edge_label_cell(out, edge, index, options.edge_label, "");
      // Neptune edge properties are single-valued; keep the first value.
      std::vector<std::string> cells;
      for (const Column& col : edge_columns) {
        const std::vector<Value>* values = edge.properties.find(col.key);
        if (!values) {
          cells.push_back("");
          continue;
        }
        cells.push_back(value_to_string(values->front()));
        for (std::size_t i = 1; i < values->size(); ++i) {
          warn(out, WarningKind::dropped_value,
               describe_edge(edge, index) + ": dropped value '" + value_to_string((*values)[i]) +
                   "' of property '" + col.key + "' (edge properties are single-valued)");
        }
      }
      auto emit = [&](const NodeId& from, const NodeId& to) {
        std::vector<std::string> row{"e" + std::to_string(++row_id),
                                     node_id_cell(from, options), node_id_cell(to, options),
                                     label};
        row.insert(row.end(), cells.begin(), cells.end());
        append_csv_row(edges_csv, row);
      };
      if (edge.undirected && options.undirected == UndirectedPolicy::keep_once) {
        warn_kept_once(out, edge, index);
      }
      emit(edge.source, edge.destination);
      if (edge.undirected && options.undirected == UndirectedPolicy::duplicate_reversed) {
        emit(edge.destination, edge.source);
      }
    }
  }

  out.files.emplace_back("vertices.csv", std::move(vertices_csv));
  out.files.emplace_back("edges.csv", std::move(edges_csv));
  return out;
}

ConversionOutput to_pgx(const PropertyGraph& graph, const ConversionOptions& options) {
  ConversionOutput out;

  auto vertex_columns = plan_columns(graph.nodes(), [](const Node& n) -> const PropertyMap& {
    return n.properties;
  });
  warn_widened(out, vertex_columns, "vertex schema");
  {
    std::size_t index = 0;
    for (const Node& node : graph.nodes()) {
      ++index;
      for (const std::string& label : node.labels) {
        warn(out, WarningKind::dropped_node_label,
             describe_node(node, index) + ": dropped label '" + label +
                 "' (PGX vertex rows have no label column)");
      }
    }
  }

  auto edge_columns = plan_columns(graph.edges(), [](const Edge& e) -> const PropertyMap& {
    return e.properties;
  });
  warn_widened(out, edge_columns, "edge schema");

  std::string opv;
  for (const Node& node : graph.nodes()) {
    std::string id = node_id_cell(node.id, options);
    if (node.properties.empty()) {
      append_csv_row(opv, {id, "", "", ""});
      continue;
    }
    for (const auto& [key, values] : node.properties.entries()) {
      for (const Value& value : values) {
        append_csv_row(opv, {id, key, std::to_string(pgx_type_code(value)),
                             value_to_string(value)});
      }
    }
  }

  std::string ope;
  {
    std::size_t index = 0;
    std::size_t row_id = 0;
    for (const Edge& edge : graph.edges()) {
      ++index;
      std::string label = edge_label_cell(out, edge, index, options.edge_label, "");
      if (edge.undirected && options.undirected == UndirectedPolicy::keep_once) {
        warn_kept_once(out, edge, index);
      }
      auto emit = [&](const NodeId& from, const NodeId& to) {
        std::string eid = "e" + std::to_string(++row_id);
        std::string src = node_id_cell(from, options);
        std::string dst = node_id_cell(to, options);
        if (edge.properties.empty()) {
          append_csv_row(ope, {eid, src, dst, label, "", "", ""});
          return;
        }
        for (const auto& [key, values] : edge.properties.entries()) {
          for (const Value& value : values) {
            append_csv_row(ope, {eid, src, dst, label, key,
                                 std::to_string(pgx_type_code(value)), value_to_string(value)});
          }
        }
      };
      emit(edge.source, edge.destination);
      if (edge.undirected && options.undirected == UndirectedPolicy::duplicate_reversed) {
        emit(edge.destination, edge.source);
      }
    }
  }

  nlohmann::ordered_json config;
  config["format"] = "csv";
  config["separator"] = ",";
  config["vertex_files"] = {"graph.opv"};
  config["edge_files"] = {"graph.ope"};
  config["vertex_props"] = nlohmann::ordered_json::array();
  for (const Column& col : vertex_columns) {
    config["vertex_props"].push_back({{"name", col.key}, {"type", pgx_type(col.type)}});
  }
  config["edge_props"] = nlohmann::ordered_json::array();
  for (const Column& col : edge_columns) {
    config["edge_props"].push_back({{"name", col.key}, {"type", pgx_type(col.type)}});
  }

  out.files.emplace_back("graph.opv", std::move(opv));
  out.files.emplace_back("graph.ope", std::move(ope));
  out.files.emplace_back("graph.json", config.dump(2) + "\n");
  return out;
}

}  // namespace pg
