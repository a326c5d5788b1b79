#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pg {

/// A typed scalar value: unicode text, signed 64-bit integer, or finite
/// 64-bit float. The integer/float distinction is preserved and never
/// coerced, so 15 and 15.0 are different values.
class Value {
 public:
  Value(std::string text) : data_(std::move(text)) {}
  Value(const char* text) : data_(std::string(text)) {}
  Value(std::int64_t number) : data_(number) {}
  Value(int number) : data_(static_cast<std::int64_t>(number)) {}
  Value(double number) : data_(number) {
    if (!std::isfinite(number)) {
      throw std::invalid_argument("Value: floating-point values must be finite");
    }
  }

  bool is_text() const { return std::holds_alternative<std::string>(data_); }
  bool is_integer() const { return std::holds_alternative<std::int64_t>(data_); }
  bool is_real() const { return std::holds_alternative<double>(data_); }

  const std::string& text() const { return std::get<std::string>(data_); }
  std::int64_t integer() const { return std::get<std::int64_t>(data_); }
  double real() const { return std::get<double>(data_); }

  friend bool operator==(const Value&, const Value&) = default;

 private:
  std::variant<std::string, std::int64_t, double> data_;
};

/// Total order over values: by kind (text, integer, real), then content.
/// Used for order-insensitive comparisons; not meaningful numerically.
bool value_less(const Value& a, const Value& b);

/// Type-preserving literal: text as-is, integers as digits, floats in
/// shortest round-trip form always containing '.' or an exponent.
std::string value_to_string(const Value& value);

/// A node identifier: non-empty unicode text or a signed 64-bit integer.
/// Text "101" and integer 101 are distinct identifiers.
class NodeId {
 public:
  NodeId(std::string text) : data_(std::move(text)) {
    if (std::get<std::string>(data_).empty()) {
      throw std::invalid_argument("NodeId: text identifiers must not be empty");
    }
  }
  NodeId(const char* text) : NodeId(std::string(text)) {}
  NodeId(std::int64_t number) : data_(number) {}
  NodeId(int number) : data_(static_cast<std::int64_t>(number)) {}

  bool is_text() const { return std::holds_alternative<std::string>(data_); }
  bool is_integer() const { return std::holds_alternative<std::int64_t>(data_); }

  const std::string& text() const { return std::get<std::string>(data_); }
  std::int64_t integer() const { return std::get<std::int64_t>(data_); }

  /// Raw rendering without quoting (for messages and converter cells).
  std::string to_string() const {
    return is_text() ? text() : std::to_string(integer());
  }

  friend bool operator==(const NodeId&, const NodeId&) = default;
  friend bool operator<(const NodeId& a, const NodeId& b) { return a.data_ < b.data_; }

 private:
  std::variant<std::string, std::int64_t> data_;
};

/// Key -> value-set map. Keys and values keep insertion order so that
/// serialization is deterministic; equality ignores both orders.
/// Value lists are never empty and never contain duplicates.
class PropertyMap {
 public:
  using Entry = std::pair<std::string, std::vector<Value>>;

  /// Appends the value under the key, creating the key at the end of the
  /// key order on first use. Duplicate values for a key are dropped.
  void add(std::string_view key, Value value);

  /// Unions every entry of other into this map.
  void merge(const PropertyMap& other);

  const std::vector<Value>* find(std::string_view key) const;
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }

  /// Set-semantics equality: key order and value order are ignored.
  friend bool operator==(const PropertyMap& a, const PropertyMap& b);

 private:
  std::vector<Entry> entries_;
};

/// Appends label if not already present. Labels must be non-empty.
/// Returns false when the label was a duplicate.
bool add_unique_label(std::vector<std::string>& labels, std::string_view label);

struct Node {
  NodeId id;
  std::vector<std::string> labels;  // duplicate-free, insertion order
  PropertyMap properties;
};

struct Edge {
  NodeId source;
  NodeId destination;
  bool undirected = false;
  std::vector<std::string> labels;  // duplicate-free, insertion order
  PropertyMap properties;
};

/// A property graph: nodes keyed by unique identifier (insertion-ordered)
/// plus an edge sequence. Edges have no identity; duplicates are allowed
/// (multigraph) and every endpoint always resolves to a node.
///
/// Graphs are built by merge_node/add_edge and are immutable by convention
/// afterwards; a completed graph is safe to share across threads.
class PropertyGraph {
 public:
  /// Inserts the node, or unions labels and properties into the existing
  /// node with this id. New nodes keep first-seen order.
  Node& merge_node(const NodeId& id, const std::vector<std::string>& labels = {},
                   const PropertyMap& properties = {});

  /// Appends an edge. Endpoints missing from the graph are created as bare
  /// nodes. Existing node content is never modified.
  void add_edge(NodeId source, NodeId destination, bool undirected,
                std::vector<std::string> labels = {}, PropertyMap properties = {});

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }

  const Node* find_node(const NodeId& id) const;
  bool contains(const NodeId& id) const { return find_node(id) != nullptr; }

 private:
  Node& ensure_node(const NodeId& id);

  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::map<NodeId, std::size_t> index_;
};

/// Order-insensitive equality: node id sets must match, each node's label
/// set and property map must match as sets, and the edge multisets must
/// match, where directed edges require identical (source, destination)
/// order and undirected edges match with either endpoint order.
bool graph_equal(const PropertyGraph& a, const PropertyGraph& b);

}  // namespace pg
