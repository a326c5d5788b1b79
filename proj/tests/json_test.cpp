#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "json.hpp"
#include "pg/json.hpp"
#include "pg/text.hpp"
#include "testutil.hpp"

using namespace pg;

namespace {

PropertyGraph read_ok(std::string_view text, Strictness strictness = Strictness::normal) {
  ParseResult result = read_json_pg(text, ReadOptions{strictness});
  for (const SourceDiagnostic& d : result.diagnostics) {
    CAPTURE(d.message);
    CHECK(d.severity != Severity::error);
  }
  REQUIRE(result.ok());
  return std::move(*result.graph);
}

std::vector<std::string> read_errors(std::string_view text,
                                     Strictness strictness = Strictness::normal) {
  ParseResult result = read_json_pg(text, ReadOptions{strictness});
  CHECK_FALSE(result.ok());
  std::vector<std::string> messages;
  for (const SourceDiagnostic& d : result.diagnostics) {
    if (d.severity == Severity::error) messages.push_back(d.message);
  }
  REQUIRE(!messages.empty());
  return messages;
}

}  // namespace

TEST_CASE("the JSON example equals the flat-text example") {
  PropertyGraph from_json = read_ok(testutil::sample_json_text());
  ParseResult from_text = parse_pg(testutil::sample_pg_text());
  REQUIRE(from_text.ok());
  CHECK(graph_equal(from_json, *from_text.graph));
  CHECK(graph_equal(from_json, testutil::sample_graph()));
}

TEST_CASE("empty documents") {
  PropertyGraph g = read_ok(R"({"nodes":[],"edges":[]})");
  CHECK(g.nodes().empty());
  CHECK(g.edges().empty());
  // nodes/edges members may be omitted entirely
  CHECK(read_ok("{}").nodes().empty());
}

TEST_CASE("defaults: labels, properties, and undirected") {
  PropertyGraph g = read_ok(R"({"nodes":[{"id":1}],"edges":[{"from":1,"to":1}]})");
  REQUIRE(g.nodes().size() == 1);
  REQUIRE(g.edges().size() == 1);
  CHECK(g.nodes().front().labels.empty());
  CHECK(g.nodes().front().properties.empty());
  CHECK_FALSE(g.edges().front().undirected);  // "By default it is false"
  CHECK(g.edges().front().source == NodeId(1));
  CHECK(g.edges().front().destination == NodeId(1));
  // explicit false is legal too
  PropertyGraph h = read_ok(R"({"edges":[{"from":1,"to":2,"undirected":false}]})");
  CHECK_FALSE(h.edges().front().undirected);
}

TEST_CASE("number typing is preserved") {
  PropertyGraph g = read_ok(R"({"nodes":[{"id":1,"properties":{"a":[15],"b":[15.0],"c":[1e3]}}]})");
  const Node& node = g.nodes().front();
  CHECK(*node.properties.find("a") == std::vector<Value>{Value(15)});
  CHECK(*node.properties.find("b") == std::vector<Value>{Value(15.0)});
  CHECK(*node.properties.find("c") == std::vector<Value>{Value(1000.0)});
}

TEST_CASE("ids map whole numbers to integer ids and strings to text ids") {
  PropertyGraph g = read_ok(R"({"nodes":[{"id":101},{"id":"101"},{"id":15.0},{"id":-7}]})");
  REQUIRE(g.nodes().size() == 4);
  CHECK(g.nodes()[0].id == NodeId(101));
  CHECK(g.nodes()[1].id == NodeId("101"));
  CHECK(g.nodes()[2].id == NodeId(15));
  CHECK(g.nodes()[3].id == NodeId(-7));
}

TEST_CASE("duplicate node objects merge") {
  PropertyGraph g = read_ok(
      R"({"nodes":[{"id":1,"labels":["A"],"properties":{"k":["x"]}},
                   {"id":1,"labels":["B"],"properties":{"k":["y"]}}]})");
  REQUIRE(g.nodes().size() == 1);
  CHECK(g.nodes().front().labels == std::vector<std::string>{"A", "B"});
  CHECK(*g.nodes().front().properties.find("k") ==
        std::vector<Value>{Value("x"), Value("y")});
}

TEST_CASE("duplicate values in one array collapse") {
  PropertyGraph g = read_ok(R"({"nodes":[{"id":1,"properties":{"k":["x","x",1,1]}}]})");
  CHECK(*g.nodes().front().properties.find("k") == std::vector<Value>{Value("x"), Value(1)});
}

TEST_CASE("syntax errors carry a position") {
  ParseResult result = read_json_pg("{\n  \"nodes\": [,]\n}");
  CHECK_FALSE(result.ok());
  REQUIRE(result.diagnostics.size() == 1);
  CHECK(result.diagnostics[0].line == 2);
  CHECK(result.diagnostics[0].column > 1);
}

TEST_CASE("shape errors") {
  CHECK(read_errors("[]").front().find("object") != std::string::npos);
  CHECK(read_errors(R"({"nodes":[{}]})").front().find("\"id\"") != std::string::npos);
  CHECK(read_errors(R"({"edges":[{"from":1}]})").front().find("\"to\"") != std::string::npos);
  CHECK(read_errors(R"({"edges":[{"to":1}]})").front().find("\"from\"") != std::string::npos);
  CHECK(read_errors(R"({"nodes":[{"id":true}]})").front().find("node ID") != std::string::npos);
  CHECK(read_errors(R"({"nodes":[{"id":1.5}]})").front().find("whole number") !=
        std::string::npos);
  CHECK(read_errors(R"({"nodes":[{"id":""}]})").front().find("empty") != std::string::npos);
  CHECK(read_errors(R"({"nodes":[{"id":1,"labels":"Person"}]})").front().find("array") !=
        std::string::npos);
  CHECK(read_errors(R"({"nodes":[{"id":1,"labels":[""]}]})").front().find("empty label") !=
        std::string::npos);
  CHECK(read_errors(R"({"edges":[{"from":1,"to":2,"undirected":"yes"}]})").front().find(
            "boolean") != std::string::npos);
  CHECK(read_errors(R"({"nodes":5})").front().find("array") != std::string::npos);
  CHECK(read_errors(R"({"nodes":[3]})").front().find("object") != std::string::npos);
}

TEST_CASE("property value errors") {
  // booleans and null are not values in this model
  CHECK(read_errors(R"({"nodes":[{"id":1,"properties":{"k":[true]}}]})").front().find(
            "boolean") != std::string::npos);
  CHECK(read_errors(R"({"nodes":[{"id":1,"properties":{"k":[null]}}]})").front().find("null") !=
        std::string::npos);
  CHECK(read_errors(R"({"nodes":[{"id":1,"properties":{"k":[]}}]})").front().find("empty") !=
        std::string::npos);
  CHECK(read_errors(R"({"nodes":[{"id":1,"properties":{"k":[[1]]}}]})").front().find(
            "strings or numbers") != std::string::npos);
  CHECK(read_errors(R"({"nodes":[{"id":1,"properties":{"":["x"]}}]})").front().find(
            "must not be empty") != std::string::npos);
}

TEST_CASE("non-finite numbers are rejected") {
  ParseResult result = read_json_pg(R"({"nodes":[{"id":1,"properties":{"k":[1e999]}}]})");
  CHECK_FALSE(result.ok());
  CHECK(result.diagnostics.front().message.find("overflow") != std::string::npos);
}

TEST_CASE("bare scalars: error by default, coerced when lenient") {
  std::string doc = R"({"nodes":[{"id":1,"properties":{"k":"x"}}]})";
  CHECK(read_errors(doc).front().find("array") != std::string::npos);

  ParseResult lenient = read_json_pg(doc, ReadOptions{Strictness::lenient});
  REQUIRE(lenient.ok());
  CHECK(*lenient.graph->nodes().front().properties.find("k") == std::vector<Value>{Value("x")});
  REQUIRE(lenient.diagnostics.size() == 1);
  CHECK(lenient.diagnostics.front().severity == Severity::warning);
}

TEST_CASE("unknown members: error by default, warning when lenient") {
  std::string doc = R"({"node":[{"id":1}]})";  // typo for "nodes"
  CHECK(read_errors(doc).front().find("unknown member") != std::string::npos);

  ParseResult lenient = read_json_pg(doc, ReadOptions{Strictness::lenient});
  REQUIRE(lenient.ok());
  REQUIRE(lenient.diagnostics.size() == 1);
  CHECK(lenient.diagnostics.front().severity == Severity::warning);

  CHECK(read_errors(R"({"nodes":[{"id":1,"label":["A"]}]})").front().find("unknown member") !=
        std::string::npos);
}

TEST_CASE("strict mode rejects edges to undeclared nodes") {
  std::string doc = R"({"nodes":[{"id":1}],"edges":[{"from":1,"to":2}]})";
  CHECK(read_ok(doc).nodes().size() == 2);  // implicit bare node by default
  CHECK(read_errors(doc, Strictness::strict).front().find("undeclared") != std::string::npos);
}

TEST_CASE("big integers") {
  // fits in uint64 but not int64
  CHECK(read_errors(R"({"nodes":[{"id":1,"properties":{"k":[9223372036854775808]}}]})")
            .front()
            .find("out of range") != std::string::npos);
  PropertyGraph g = read_ok(R"({"nodes":[{"id":1,"properties":{"k":[9223372036854775807]}}]})");
  CHECK(*g.nodes().front().properties.find("k") ==
        std::vector<Value>{Value(std::int64_t{9223372036854775807LL})});
}

TEST_CASE("writer canonical form") {
  CHECK(write_json_pg(PropertyGraph{}) == "{\n  \"nodes\": [],\n  \"edges\": []\n}\n");

  ParseResult sample = parse_pg(testutil::sample_pg_text());
  REQUIRE(sample.ok());
  std::string out = write_json_pg(*sample.graph);

  // member values must match the JSON example
  auto written = nlohmann::ordered_json::parse(out);
  auto expected = nlohmann::ordered_json::parse(testutil::sample_json_text());
  CHECK(written["nodes"][0]["id"] == expected["nodes"][0]["id"]);
  CHECK(written["nodes"][0]["labels"] == expected["nodes"][0]["labels"]);
  CHECK(written["nodes"][0]["properties"] == expected["nodes"][0]["properties"]);
  CHECK(written["nodes"][1] == expected["nodes"][1]);
  CHECK(written["edges"][0]["undirected"] == nlohmann::ordered_json(true));
  CHECK(written["edges"][0]["labels"] == expected["edges"][0]["labels"]);
  CHECK(written["edges"][1]["properties"] == expected["edges"][1]["properties"]);

  // a directed edge carries no "undirected" member
  CHECK_FALSE(written["edges"][1].contains("undirected"));

  // node members appear in canonical order
  std::vector<std::string> keys;
  for (const auto& [key, member] : written["nodes"][0].items()) keys.push_back(key);
  CHECK(keys == std::vector<std::string>{"id", "labels", "properties"});
}

TEST_CASE("writer emits labels and properties even when empty") {
  PropertyGraph g;
  g.merge_node(1);
  g.add_edge(1, 1, false);
  auto written = nlohmann::ordered_json::parse(write_json_pg(g));
  CHECK(written["nodes"][0]["labels"].is_array());
  CHECK(written["nodes"][0]["properties"].is_object());
  CHECK(written["edges"][0]["labels"].empty());
}

TEST_CASE("writer is deterministic") {
  std::mt19937 rng(41);
  PropertyGraph g = testutil::random_graph(rng);
  CHECK(write_json_pg(g) == write_json_pg(g));
}

TEST_CASE("json round trip holds on random graphs") {
  std::mt19937 rng(43);
  for (int i = 0; i < 300; ++i) {
    PropertyGraph g = testutil::random_graph(rng);
    ParseResult back = read_json_pg(write_json_pg(g));
    REQUIRE(back.ok());
    CHECK(graph_equal(g, *back.graph));
    // never produces NaN/inf floats or empty value lists
    for (const Node& node : back.graph->nodes()) {
      for (const auto& [key, values] : node.properties.entries()) CHECK(!values.empty());
    }
  }
}

TEST_CASE("flat-text and json pipelines commute") {
  std::mt19937 rng(47);
  for (int i = 0; i < 100; ++i) {
    PropertyGraph g = testutil::random_graph(rng);
    ParseResult via_text = parse_pg(serialize_pg(g));
    REQUIRE(via_text.ok());
    ParseResult text_then_json = read_json_pg(write_json_pg(*via_text.graph));
    REQUIRE(text_then_json.ok());
    CHECK(graph_equal(g, *text_then_json.graph));

    ParseResult via_json = read_json_pg(write_json_pg(g));
    REQUIRE(via_json.ok());
    ParseResult json_then_text = parse_pg(serialize_pg(*via_json.graph));
    REQUIRE(json_then_text.ok());
    CHECK(graph_equal(g, *json_then_text.graph));
  }
}
