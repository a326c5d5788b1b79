#include "pg/text.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>

namespace pg {

namespace {

bool is_separator(char c) { return c == ' ' || c == '\t'; }

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool integer_syntax(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), is_digit);
}

// Optional '-', digits, then a '.' fraction and/or an e/E exponent with an
// optional sign. At least one of fraction/exponent must be present.
bool float_syntax(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && s[i] == '-') ++i;
  std::size_t digits = 0;
  while (i < s.size() && is_digit(s[i])) ++i, ++digits;
  if (digits == 0) return false;
  bool fraction = false, exponent = false;
  if (i < s.size() && s[i] == '.') {
    ++i;
    std::size_t frac = 0;
    while (i < s.size() && is_digit(s[i])) ++i, ++frac;
    if (frac == 0) return false;
    fraction = true;
  }
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t exp = 0;
    while (i < s.size() && is_digit(s[i])) ++i, ++exp;
    if (exp == 0) return false;
    exponent = true;
  }
  return i == s.size() && (fraction || exponent);
}

bool starts_with_unquoted_colon(const Field& f) {
  const FieldSegment& first = f.segments.front();
  return !first.quoted && !first.text.empty() && first.text.front() == ':';
}

constexpr std::size_t npos = std::string::npos;

// Logical position of the first unquoted ':' in the joined text.
std::size_t first_unquoted_colon(const Field& f) {
  std::size_t offset = 0;
  for (const FieldSegment& seg : f.segments) {
    if (!seg.quoted) {
      if (std::size_t pos = seg.text.find(':'); pos != npos) return offset + pos;
    }
    offset += seg.text.size();
  }
  return npos;
}

bool is_direction(const Field& f) { return f.is_plain("--") || f.is_plain("->"); }

struct ValueSlice {
  std::string text;
  bool quoted = false;     // any part of the slice came from a quoted run
  std::size_t column = 0;  // source column of the slice's first character
};

// Everything after the unquoted colon at logical position `colon`.
ValueSlice slice_after_colon(const Field& f, std::size_t colon) {
  ValueSlice out;
  std::size_t offset = 0;
  std::size_t i = 0;
  for (; i < f.segments.size(); ++i) {
    const FieldSegment& seg = f.segments[i];
    std::size_t end = offset + seg.text.size();
    if (!seg.quoted && colon >= offset && colon < end) break;
    offset = end;
  }
  const FieldSegment& seg = f.segments[i];
  std::size_t in_seg = colon - offset + 1;  // first char after the colon
  out.column = seg.column + in_seg;
  if (in_seg < seg.text.size()) out.text.append(seg.text, in_seg, npos);
  bool column_fixed = !out.text.empty();
  for (std::size_t k = i + 1; k < f.segments.size(); ++k) {
    const FieldSegment& rest = f.segments[k];
    if (!column_fixed) {
      out.column = rest.column;
      column_fixed = true;
    }
    out.text += rest.text;
    out.quoted = out.quoted || rest.quoted;
  }
  return out;
}

void report(std::vector<SourceDiagnostic>& diags, std::size_t line, std::size_t column,
            std::string message, Severity severity = Severity::error) {
  diags.push_back({line, column, severity, std::move(message)});
}

std::optional<NodeId> parse_node_id(const Field& f, std::size_t line_no,
                                    const ReadOptions& options,
                                    std::vector<SourceDiagnostic>& diags,
                                    std::string_view role) {
  std::string text = f.joined();
  if (first_unquoted_colon(f) != npos) {
    report(diags, line_no, f.column(),
           "expected " + std::string(role) + ", found '" + text + "'");
    return std::nullopt;
  }
  if (text.empty()) {
    report(diags, line_no, f.column(), "empty " + std::string(role));
    return std::nullopt;
  }
  if (f.any_quoted()) {
    if (options.strictness == Strictness::strict) {
      report(diags, line_no, f.column(), "quoted node ID is not allowed in strict mode");
      return std::nullopt;
    }
    return NodeId(std::move(text));
  }
  if (integer_syntax(text)) {
    std::int64_t number = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), number);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      report(diags, line_no, f.column(), std::string(role) + " '" + text + "' is out of range");
      return std::nullopt;
    }
    return NodeId(number);
  }
  return NodeId(std::move(text));
}

}  // namespace

std::string Field::joined() const {
  std::string out;
  for (const FieldSegment& seg : segments) out += seg.text;
  return out;
}

bool Field::any_quoted() const {
  return std::any_of(segments.begin(), segments.end(),
                     [](const FieldSegment& seg) { return seg.quoted; });
}

bool Field::is_plain(std::string_view text) const {
  return segments.size() == 1 && !segments.front().quoted && segments.front().text == text;
}

bool lexes_as_number(std::string_view text) {
  return integer_syntax(text) || float_syntax(text);
}

std::optional<std::vector<Field>> tokenize_line(std::string_view line, std::size_t line_no,
                                                std::vector<SourceDiagnostic>& diagnostics) {
  std::vector<Field> fields;
  std::size_t i = 0;
  const std::size_t n = line.size();
  bool comment = false;
  while (i < n && !comment) {
    if (is_separator(line[i])) {
      ++i;
      continue;
    }
    if (line[i] == '#') break;

    Field field;
    std::string run;
    std::size_t run_column = 0;
    auto flush_run = [&] {
      if (!run.empty()) {
        field.segments.push_back({std::move(run), false, run_column});
        run.clear();
      }
    };

    while (i < n) {
      char c = line[i];
      if (is_separator(c)) break;
      if (c == '#') {
        comment = true;
        break;
      }
      if (c == '"') {
        flush_run();
        std::size_t quote_column = i + 1;
        ++i;
        std::string content;
        bool closed = false;
        while (i < n) {
          char q = line[i];
          if (q == '"') {
            closed = true;
            ++i;
            break;
          }
          if (q == '\\') {
            if (i + 1 >= n) break;  // escape runs into end of line
            char esc = line[i + 1];
            if (esc != '"' && esc != '\\') {
              report(diagnostics, line_no, i + 1,
                     std::string("unsupported escape sequence '\\") + esc +
                         "' (only \\\" and \\\\ are allowed)");
              return std::nullopt;
            }
            content.push_back(esc);
            i += 2;
            continue;
          }
          content.push_back(q);
          ++i;
        }
        if (!closed) {
          report(diagnostics, line_no, quote_column, "unterminated quote");
          return std::nullopt;
        }
        field.segments.push_back({std::move(content), true, quote_column});
        continue;
      }
      if (run.empty()) run_column = i + 1;
      run.push_back(c);
      ++i;
    }
    flush_run();
    if (!field.segments.empty()) fields.push_back(std::move(field));
  }
  return fields;
}

std::optional<Value> parse_value(std::string_view raw, bool quoted, std::string* error) {
  if (quoted) return Value(std::string(raw));
  if (integer_syntax(raw)) {
    std::int64_t number = 0;
    auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), number);
    if (ec != std::errc() || ptr != raw.data() + raw.size()) {
      if (error) *error = "integer value '" + std::string(raw) + "' is out of range";
      return std::nullopt;
    }
    return Value(number);
  }
  if (float_syntax(raw)) {
    double number = 0.0;
    auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), number);
    if (ec != std::errc() || ptr != raw.data() + raw.size()) {
      if (error) *error = "floating-point value '" + std::string(raw) + "' is out of range";
      return std::nullopt;
    }
    return Value(number);
  }
  return Value(std::string(raw));
}

std::optional<Statement> parse_statement(const std::vector<Field>& fields, std::size_t line_no,
                                         const ReadOptions& options,
                                         std::vector<SourceDiagnostic>& diagnostics) {
  const bool edge = fields.size() >= 2 && is_direction(fields[1]);
  std::optional<NodeId> id, destination;
  std::size_t body_start = 1;
  std::size_t destination_column = 0;
  bool undirected = false;

  if (edge) {
    if (fields.size() < 3) {
      report(diagnostics, line_no, fields[1].column(), "edge is missing the destination node ID");
      return std::nullopt;
    }
    id = parse_node_id(fields[0], line_no, options, diagnostics, "source node ID");
    destination = parse_node_id(fields[2], line_no, options, diagnostics, "destination node ID");
    undirected = fields[1].is_plain("--");
    destination_column = fields[2].column();
    body_start = 3;
  } else {
    id = parse_node_id(fields[0], line_no, options, diagnostics, "node ID");
  }

  std::vector<std::string> labels;
  PropertyMap properties;
  bool seen_property = false;
  bool failed = !id || (edge && !destination);

  for (std::size_t k = body_start; k < fields.size(); ++k) {
    const Field& f = fields[k];
    if (starts_with_unquoted_colon(f)) {
      std::string label = f.joined().substr(1);
      if (seen_property) {
        report(diagnostics, line_no, f.column(),
               "label ':" + label + "' appears after a property (labels must come first)");
        failed = true;
        continue;
      }
      if (label.empty()) {
        report(diagnostics, line_no, f.column(), "empty label");
        failed = true;
        continue;
      }
      add_unique_label(labels, label);
      continue;
    }
    std::size_t colon = first_unquoted_colon(f);
    if (colon != npos) {
      std::string key = f.joined().substr(0, colon);
      if (key.empty()) {
        report(diagnostics, line_no, f.column(), "empty property key");
        failed = true;
        continue;
      }
      ValueSlice slice = slice_after_colon(f, colon);
      if (slice.text.empty() && !slice.quoted) {
        report(diagnostics, line_no, slice.column, "property '" + key + "' has an empty value");
        failed = true;
        continue;
      }
      std::string error;
      std::optional<Value> value = parse_value(slice.text, slice.quoted, &error);
      if (!value) {
        report(diagnostics, line_no, slice.column, error);
        failed = true;
        continue;
      }
      properties.add(key, std::move(*value));
      seen_property = true;
      continue;
    }
    std::string text = f.joined();
    if (!f.any_quoted() && text == "<-") {
      report(diagnostics, line_no, f.column(),
             "'<-' is not a valid direction (use '--' or '->' and write the source first)");
    } else {
      report(diagnostics, line_no, f.column(),
             "expected a label or a property, found '" + text + "'");
    }
    failed = true;
  }

  if (failed) return std::nullopt;
  if (edge) {
    return Statement(EdgeRecord{std::move(*id), std::move(*destination), undirected,
                                std::move(labels), std::move(properties), fields[0].column(),
                                destination_column});
  }
  return Statement(NodeRecord{std::move(*id), std::move(labels), std::move(properties)});
}

ParseResult parse_pg(std::string_view text, const ReadOptions& options) {
  ParseResult result;
  PropertyGraph graph;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  while (pos < text.size()) {
    std::size_t newline = text.find('\n', pos);
    std::string_view line = newline == npos ? text.substr(pos)
                                            : text.substr(pos, newline - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    pos = newline == npos ? text.size() : newline + 1;

    auto fields = tokenize_line(line, line_no, result.diagnostics);
    if (!fields || fields->empty()) continue;
    auto statement = parse_statement(*fields, line_no, options, result.diagnostics);
    if (!statement) continue;

    if (auto* node = std::get_if<NodeRecord>(&*statement)) {
      graph.merge_node(node->id, node->labels, node->properties);
      continue;
    }
    auto& edge = std::get<EdgeRecord>(*statement);
    if (options.strictness == Strictness::strict) {
      bool missing = false;
      if (!graph.contains(edge.source)) {
        report(result.diagnostics, line_no, edge.source_column,
               "edge references undeclared node '" + edge.source.to_string() + "' (strict mode)");
        missing = true;
      }
      if (!graph.contains(edge.destination)) {
        report(result.diagnostics, line_no, edge.destination_column,
               "edge references undeclared node '" + edge.destination.to_string() +
                   "' (strict mode)");
        missing = true;
      }
      if (missing) continue;
    }
    graph.add_edge(std::move(edge.source), std::move(edge.destination), edge.undirected,
                   std::move(edge.labels), std::move(edge.properties));
  }

  if (!has_errors(result.diagnostics)) result.graph = std::move(graph);
  return result;
}

namespace {

bool needs_quotes(std::string_view s) {
  return s.find_first_of(" \t\r\n\"#:") != npos;
}

std::string quoted(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  out += '"';
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

// quote_numbers distinguishes positions where a bare token would lex as a
// number (IDs and values) from label/key positions where it cannot.
std::string render_text(std::string_view s, bool quote_numbers) {
  if (s.empty() || needs_quotes(s) || (quote_numbers && lexes_as_number(s))) return quoted(s);
  return std::string(s);
}

std::string render_node_id(const NodeId& id) {
  if (id.is_integer()) return std::to_string(id.integer());
  return render_text(id.text(), true);
}

std::string render_value(const Value& value) {
  if (value.is_text()) return render_text(value.text(), true);
  return value_to_string(value);
}

void append_labels_and_properties(std::string& out, const std::vector<std::string>& labels,
                                  const PropertyMap& properties) {
  for (const std::string& label : labels) {
    out += " :";
    out += render_text(label, false);
  }
  for (const auto& [key, values] : properties.entries()) {
    for (const Value& value : values) {
      out += ' ';
      out += render_text(key, false);
      out += ':';
      out += render_value(value);
    }
  }
}

}  // namespace

std::string serialize_pg(const PropertyGraph& graph) {
  std::string out;
  for (const Node& node : graph.nodes()) {
    out += render_node_id(node.id);
    append_labels_and_properties(out, node.labels, node.properties);
    out += '\n';
  }
  for (const Edge& edge : graph.edges()) {
    out += render_node_id(edge.source);
    out += edge.undirected ? " -- " : " -> ";
    out += render_node_id(edge.destination);
    append_labels_and_properties(out, edge.labels, edge.properties);
    out += '\n';
  }
  return out;
}

}  // namespace pg
