#include "pg/model.hpp"

#include <algorithm>
#include <charconv>
#include <tuple>

namespace pg {

namespace {

int cmp(std::string_view a, std::string_view b) { return a.compare(b); }

template <typename T>
int cmp_ordered(const T& a, const T& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

int value_kind(const Value& v) { return v.is_text() ? 0 : v.is_integer() ? 1 : 2; }

int cmp_value(const Value& a, const Value& b) {
  if (int k = cmp_ordered(value_kind(a), value_kind(b)); k != 0) return k;
  if (a.is_text()) return cmp(a.text(), b.text());
  if (a.is_integer()) return cmp_ordered(a.integer(), b.integer());
  return cmp_ordered(a.real(), b.real());  // finite only, so < is total
}

int cmp_node_id(const NodeId& a, const NodeId& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

template <typename T, typename Cmp>
int cmp_sequence(const std::vector<T>& a, const std::vector<T>& b, Cmp cmp_elem) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int k = cmp_elem(a[i], b[i]); k != 0) return k;
  }
  return cmp_ordered(a.size(), b.size());
}

std::vector<std::string> sorted_labels(const std::vector<std::string>& labels) {
  std::vector<std::string> out = labels;
  std::sort(out.begin(), out.end());
  return out;
}

// Entries sorted by key, values sorted by the total value order.
std::vector<PropertyMap::Entry> canonical_properties(const PropertyMap& map) {
  std::vector<PropertyMap::Entry> out = map.entries();
  for (auto& [key, values] : out) {
    std::sort(values.begin(), values.end(),
              [](const Value& a, const Value& b) { return cmp_value(a, b) < 0; });
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

int cmp_properties(const std::vector<PropertyMap::Entry>& a,
                   const std::vector<PropertyMap::Entry>& b) {
  return cmp_sequence(a, b, [](const PropertyMap::Entry& x, const PropertyMap::Entry& y) {
    if (int k = cmp(x.first, y.first); k != 0) return k;
    return cmp_sequence(x.second, y.second, cmp_value);
  });
}

struct CanonicalEdge {
  bool undirected = false;
  NodeId a;
  NodeId b;
  std::vector<std::string> labels;
  std::vector<PropertyMap::Entry> properties;
};

CanonicalEdge canonicalize(const Edge& edge) {
  CanonicalEdge out{edge.undirected, edge.source, edge.destination,
                    sorted_labels(edge.labels), canonical_properties(edge.properties)};
  if (edge.undirected && cmp_node_id(out.b, out.a) < 0) std::swap(out.a, out.b);
  return out;
}

int cmp_edge(const CanonicalEdge& x, const CanonicalEdge& y) {
  if (int k = cmp_ordered(x.undirected, y.undirected); k != 0) return k;
  if (int k = cmp_node_id(x.a, y.a); k != 0) return k;
  if (int k = cmp_node_id(x.b, y.b); k != 0) return k;
  if (int k = cmp_sequence(x.labels, y.labels,
                           [](const std::string& a, const std::string& b) { return cmp(a, b); });
      k != 0) {
    return k;
  }
  return cmp_properties(x.properties, y.properties);
}

}  // namespace

bool value_less(const Value& a, const Value& b) { return cmp_value(a, b) < 0; }

std::string value_to_string(const Value& value) {
  if (value.is_text()) return value.text();
  if (value.is_integer()) return std::to_string(value.integer());
  char buf[64];
  auto result = std::to_chars(buf, buf + sizeof(buf), value.real());
  std::string out(buf, result.ptr);
  // Keep the literal re-lexable as a float, not an integer.
  if (out.find_first_of(".eE") == std::string::npos) out += ".0";
  return out;
}

void PropertyMap::add(std::string_view key, Value value) {
  if (key.empty()) throw std::invalid_argument("PropertyMap: keys must not be empty");
  for (auto& [existing, values] : entries_) {
    if (existing == key) {
      if (std::find(values.begin(), values.end(), value) == values.end()) {
        values.push_back(std::move(value));
      }
      return;
    }
  }
  entries_.emplace_back(std::string(key), std::vector<Value>{std::move(value)});
}

void PropertyMap::merge(const PropertyMap& other) {
  for (const auto& [key, values] : other.entries_) {
    for (const Value& value : values) add(key, value);
  }
}

const std::vector<Value>* PropertyMap::find(std::string_view key) const {
  for (const auto& [existing, values] : entries_) {
    if (existing == key) return &values;
  }
  return nullptr;
}

bool operator==(const PropertyMap& a, const PropertyMap& b) {
  return cmp_properties(canonical_properties(a), canonical_properties(b)) == 0;
}

bool add_unique_label(std::vector<std::string>& labels, std::string_view label) {
  if (label.empty()) throw std::invalid_argument("labels must not be empty");
  if (std::find(labels.begin(), labels.end(), label) != labels.end()) return false;
  labels.emplace_back(label);
  return true;
}

Node& PropertyGraph::ensure_node(const NodeId& id) {
  auto it = index_.find(id);
  if (it != index_.end()) return nodes_[it->second];
  index_.emplace(id, nodes_.size());
  nodes_.push_back(Node{id, {}, {}});
  return nodes_.back();
}

Node& PropertyGraph::merge_node(const NodeId& id, const std::vector<std::string>& labels,
                                const PropertyMap& properties) {
  Node& node = ensure_node(id);
  for (const std::string& label : labels) add_unique_label(node.labels, label);
  node.properties.merge(properties);
  return node;
}

void PropertyGraph::add_edge(NodeId source, NodeId destination, bool undirected,
                             std::vector<std::string> labels, PropertyMap properties) {
  std::vector<std::string> unique;
  for (const std::string& label : labels) add_unique_label(unique, label);
  ensure_node(source);
  ensure_node(destination);
  edges_.push_back(Edge{std::move(source), std::move(destination), undirected,
                        std::move(unique), std::move(properties)});
}

const Node* PropertyGraph::find_node(const NodeId& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &nodes_[it->second];
}

bool graph_equal(const PropertyGraph& a, const PropertyGraph& b) {
  if (a.nodes().size() != b.nodes().size()) return false;
  if (a.edges().size() != b.edges().size()) return false;

  for (const Node& node : a.nodes()) {
    const Node* other = b.find_node(node.id);
    if (other == nullptr) return false;
    if (sorted_labels(node.labels) != sorted_labels(other->labels)) return false;
    if (!(node.properties == other->properties)) return false;
  }

  std::vector<CanonicalEdge> ea, eb;
  ea.reserve(a.edges().size());
  eb.reserve(b.edges().size());
  for (const Edge& e : a.edges()) ea.push_back(canonicalize(e));
  for (const Edge& e : b.edges()) eb.push_back(canonicalize(e));
  auto less = [](const CanonicalEdge& x, const CanonicalEdge& y) { return cmp_edge(x, y) < 0; };
  std::sort(ea.begin(), ea.end(), less);
  std::sort(eb.begin(), eb.end(), less);
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (cmp_edge(ea[i], eb[i]) != 0) return false;
  }
  return true;
}

}  // namespace pg
