#include "pg/json.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

#include "json.hpp"

namespace pg {

namespace {

using ojson = nlohmann::ordered_json;

// Largest double that is both integral-exact and within int64 range.
constexpr double kMaxExactWhole = 9007199254740992.0;  // 2^53

std::pair<std::size_t, std::size_t> offset_to_position(std::string_view text,
                                                       std::size_t byte_offset) {
  // nlohmann reports the 1-based index of the last processed byte.
  std::size_t end = byte_offset == 0 ? 0 : byte_offset - 1;
  if (end > text.size()) end = text.size();
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

std::string strip_exception_tag(const char* what) {
  std::string message(what);
  if (std::size_t pos = message.find("] "); message.starts_with("[") && pos != std::string::npos) {
    message.erase(0, pos + 2);
  }
  return message;
}

const char* type_word(const ojson& j) {
  if (j.is_null()) return "null";
  if (j.is_boolean()) return "a boolean";
  if (j.is_string()) return "a string";
  if (j.is_number()) return "a number";
  if (j.is_array()) return "an array";
  return "an object";
}

class Reader {
 public:
  Reader(const ReadOptions& options, std::vector<SourceDiagnostic>& diagnostics)
      : options_(options), diagnostics_(diagnostics) {}

  PropertyGraph& graph() { return graph_; }

  void run(const ojson& doc) {
    if (!doc.is_object()) {
      error("", std::string("top-level value must be an object, not ") + type_word(doc));
      return;
    }
    for (const auto& [key, member] : doc.items()) {
      if (key != "nodes" && key != "edges") unknown_member("document", key);
    }
    if (const auto it = doc.find("nodes"); it != doc.end()) {
      if (!it->is_array()) {
        error("nodes", std::string("must be an array, not ") + type_word(*it));
      } else {
        for (std::size_t i = 0; i < it->size(); ++i) {
          read_node((*it)[i], "nodes[" + std::to_string(i) + "]");
        }
      }
    }
    if (const auto it = doc.find("edges"); it != doc.end()) {
      if (!it->is_array()) {
        error("edges", std::string("must be an array, not ") + type_word(*it));
      } else {
        for (std::size_t i = 0; i < it->size(); ++i) {
          read_edge((*it)[i], "edges[" + std::to_string(i) + "]");
        }
      }
    }
  }

 private:
  void error(const std::string& where, const std::string& message) {
    diagnostics_.push_back(
        {1, 1, Severity::error, where.empty() ? message : where + ": " + message});
  }

  void warn(const std::string& where, const std::string& message) {
    diagnostics_.push_back({1, 1, Severity::warning, where + ": " + message});
  }

  void unknown_member(const std::string& where, const std::string& key) {
    if (options_.strictness == Strictness::lenient) {
      warn(where, "ignoring unknown member \"" + key + "\"");
    } else {
      error(where, "unknown member \"" + key + "\"");
    }
  }

  std::optional<NodeId> read_id(const ojson& j, const std::string& where) {
    if (j.is_string()) {
      const auto& text = j.get_ref<const std::string&>();
      if (text.empty()) {
        error(where, "node ID must not be an empty string");
        return std::nullopt;
      }
      return NodeId(text);
    }
    if (j.is_number_integer() && !j.is_number_unsigned()) {
      return NodeId(j.get<std::int64_t>());
    }
    if (j.is_number_unsigned()) {
      std::uint64_t u = j.get<std::uint64_t>();
      if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        error(where, "node ID is out of range");
        return std::nullopt;
      }
      return NodeId(static_cast<std::int64_t>(u));
    }
    if (j.is_number_float()) {
      double d = j.get<double>();
      if (!std::isfinite(d) || d != std::floor(d) || std::abs(d) > kMaxExactWhole) {
        error(where, "node ID must be a string or a whole number");
        return std::nullopt;
      }
      return NodeId(static_cast<std::int64_t>(d));
    }
    error(where, std::string("node ID must be a string or a number, not ") + type_word(j));
    return std::nullopt;
  }

  std::optional<Value> read_value(const ojson& j, const std::string& where) {
    if (j.is_string()) return Value(j.get<std::string>());
    if (j.is_number_integer() && !j.is_number_unsigned()) return Value(j.get<std::int64_t>());
    if (j.is_number_unsigned()) {
      std::uint64_t u = j.get<std::uint64_t>();
      if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        error(where, "integer value is out of range");
        return std::nullopt;
      }
      return Value(static_cast<std::int64_t>(u));
    }
    if (j.is_number_float()) {
      double d = j.get<double>();
      if (!std::isfinite(d)) {
        error(where, "number is not finite");
        return std::nullopt;
      }
      return Value(d);
    }
    if (j.is_boolean() || j.is_null()) {
      error(where, std::string("property values must be strings or numbers; ") + type_word(j) +
                       " is not supported");
      return std::nullopt;
    }
    error(where, std::string("property values must be strings or numbers, not ") + type_word(j));
    return std::nullopt;
  }

  std::vector<std::string> read_labels(const ojson& object, const std::string& where,
                                       bool& failed) {
    std::vector<std::string> labels;
    const auto it = object.find("labels");
    if (it == object.end()) return labels;
    if (!it->is_array()) {
      error(where + ".labels", std::string("must be an array of strings, not ") + type_word(*it));
      failed = true;
      return labels;
    }
    for (std::size_t i = 0; i < it->size(); ++i) {
      const ojson& element = (*it)[i];
      std::string spot = where + ".labels[" + std::to_string(i) + "]";
      if (!element.is_string()) {
        error(spot, std::string("labels must be strings, not ") + type_word(element));
        failed = true;
        continue;
      }
      const auto& label = element.get_ref<const std::string&>();
      if (label.empty()) {
        error(spot, "empty label");
        failed = true;
        continue;
      }
      add_unique_label(labels, label);
    }
    return labels;
  }

  PropertyMap read_properties(const ojson& object, const std::string& where, bool& failed) {
    PropertyMap properties;
    const auto it = object.find("properties");
    if (it == object.end()) return properties;
    if (!it->is_object()) {
      error(where + ".properties", std::string("must be an object, not ") + type_word(*it));
      failed = true;
      return properties;
    }
    for (const auto& [key, member] : it->items()) {
      std::string spot = where + ".properties[\"" + key + "\"]";
      if (key.empty()) {
        error(where + ".properties", "property keys must not be empty");
        failed = true;
        continue;
      }
      if (member.is_array()) {
        if (member.empty()) {
          error(spot, "value array must not be empty");
          failed = true;
          continue;
        }
        for (const ojson& element : member) {
          if (auto value = read_value(element, spot)) {
            properties.add(key, std::move(*value));
          } else {
            failed = true;
          }
        }
        continue;
      }
      if (member.is_string() || member.is_number()) {
        if (options_.strictness == Strictness::lenient) {
          warn(spot, "scalar value coerced to a one-element array");
          if (auto value = read_value(member, spot)) {
            properties.add(key, std::move(*value));
          } else {
            failed = true;
          }
        } else {
          error(spot, "values must be wrapped in an array (use --lenient to coerce scalars)");
          failed = true;
        }
        continue;
      }
      error(spot, std::string("must be an array of strings or numbers, not ") + type_word(member));
      failed = true;
    }
    return properties;
  }

  void read_node(const ojson& j, const std::string& where) {
    if (!j.is_object()) {
      error(where, std::string("must be an object, not ") + type_word(j));
      return;
    }
    for (const auto& [key, member] : j.items()) {
      if (key != "id" && key != "labels" && key != "properties") unknown_member(where, key);
    }
    const auto id_it = j.find("id");
    if (id_it == j.end()) {
      error(where, "missing required member \"id\"");
      return;
    }
    std::optional<NodeId> id = read_id(*id_it, where + ".id");
    bool failed = false;
    std::vector<std::string> labels = read_labels(j, where, failed);
    PropertyMap properties = read_properties(j, where, failed);
    if (!id || failed) return;
    graph_.merge_node(*id, labels, properties);
  }

  void read_edge(const ojson& j, const std::string& where) {
    if (!j.is_object()) {
      error(where, std::string("must be an object, not ") + type_word(j));
      return;
    }
    for (const auto& [key, member] : j.items()) {
      if (key != "from" && key != "to" && key != "undirected" && key != "labels" &&
          key != "properties") {
        unknown_member(where, key);
      }
    }
    std::optional<NodeId> from, to;
    if (const auto it = j.find("from"); it != j.end()) {
      from = read_id(*it, where + ".from");
    } else {
      error(where, "missing required member \"from\"");
    }
    if (const auto it = j.find("to"); it != j.end()) {
      to = read_id(*it, where + ".to");
    } else {
      error(where, "missing required member \"to\"");
    }
    bool undirected = false;
    bool failed = false;
    if (const auto it = j.find("undirected"); it != j.end()) {
      if (!it->is_boolean()) {
        error(where + ".undirected", std::string("must be a boolean, not ") + type_word(*it));
        failed = true;
      } else {
        undirected = it->get<bool>();
      }
    }
    std::vector<std::string> labels = read_labels(j, where, failed);
    PropertyMap properties = read_properties(j, where, failed);
    if (!from || !to || failed) return;
    if (options_.strictness == Strictness::strict) {
      bool missing = false;
      for (const NodeId* endpoint : {&*from, &*to}) {
        if (!graph_.contains(*endpoint)) {
          error(where, "edge references undeclared node '" + endpoint->to_string() +
                           "' (strict mode)");
          missing = true;
        }
      }
      if (missing) return;
    }
    graph_.add_edge(std::move(*from), std::move(*to), undirected, std::move(labels),
                    std::move(properties));
  }

  const ReadOptions& options_;
  std::vector<SourceDiagnostic>& diagnostics_;
  PropertyGraph graph_;
};

ojson value_to_json(const Value& value) {
  if (value.is_text()) return value.text();
  if (value.is_integer()) return value.integer();
  return value.real();
}

ojson id_to_json(const NodeId& id) {
  if (id.is_integer()) return id.integer();
  return id.text();
}

ojson properties_to_json(const PropertyMap& properties) {
  ojson out = ojson::object();
  for (const auto& [key, values] : properties.entries()) {
    ojson array = ojson::array();
    for (const Value& value : values) array.push_back(value_to_json(value));
    out[key] = std::move(array);
  }
  return out;
}

}  // namespace

ParseResult read_json_pg(std::string_view text, const ReadOptions& options) {
  ParseResult result;
  ojson doc;
  try {
    doc = ojson::parse(text);
  } catch (const ojson::parse_error& e) {
    auto [line, column] = offset_to_position(text, e.byte);
    result.diagnostics.push_back({line, column, Severity::error, strip_exception_tag(e.what())});
    return result;
  } catch (const ojson::exception& e) {
    // e.g. out_of_range on numbers like 1e999 that overflow a double
    result.diagnostics.push_back({1, 1, Severity::error, strip_exception_tag(e.what())});
    return result;
  }

  Reader reader(options, result.diagnostics);
  reader.run(doc);
  if (!has_errors(result.diagnostics)) result.graph = std::move(reader.graph());
  return result;
}

std::string write_json_pg(const PropertyGraph& graph) {
  ojson doc;
  doc["nodes"] = ojson::array();
  for (const Node& node : graph.nodes()) {
    ojson j;
    j["id"] = id_to_json(node.id);
    j["labels"] = node.labels;
    j["properties"] = properties_to_json(node.properties);
    doc["nodes"].push_back(std::move(j));
  }
  doc["edges"] = ojson::array();
  for (const Edge& edge : graph.edges()) {
    ojson j;
    j["from"] = id_to_json(edge.source);
    j["to"] = id_to_json(edge.destination);
    if (edge.undirected) j["undirected"] = true;
    j["labels"] = edge.labels;
    j["properties"] = properties_to_json(edge.properties);
    doc["edges"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

}  // namespace pg
