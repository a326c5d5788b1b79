#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <cstring>
#include <filesystem>
#include <regex>
#include <string>
#include <vector>

#include "pg/json.hpp"
#include "pg/text.hpp"
#include "testutil.hpp"

namespace fs = std::filesystem;

namespace {

std::string g_pgtool;

testutil::ToolResult run(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  REQUIRE(!g_pgtool.empty());
  return testutil::run_tool(g_pgtool, args, stdin_text);
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<char*> forwarded;
  for (int i = 0; i < argc; ++i) {
    if (std::strncmp(argv[i], "--pgtool=", 9) == 0) {
      g_pgtool = argv[i] + 9;
    } else {
      forwarded.push_back(argv[i]);
    }
  }
  doctest::Context context(static_cast<int>(forwarded.size()), forwarded.data());
  return context.run();
}

TEST_CASE("convert pg to json matches the JSON example") {
  testutil::TempDir dir;
  fs::path input = dir.path / "sample.pg";
  testutil::write_file(input, testutil::sample_pg_text());

  auto result = run({"convert", "--from", "pg", "--to", "json", input.string()});
  CHECK(result.status == 0);
  CHECK(result.err.empty());

  pg::ParseResult back = pg::read_json_pg(result.out);
  REQUIRE(back.ok());
  CHECK(pg::graph_equal(*back.graph, testutil::sample_graph()));
}

TEST_CASE("validate on empty stdin exits 0 with no output") {
  auto result = run({"validate", "--from", "pg"});
  CHECK(result.status == 0);
  CHECK(result.out.empty());
  CHECK(result.err.empty());
}

TEST_CASE("multi-file targets require an output directory") {
  testutil::TempDir dir;
  fs::path input = dir.path / "sample.pg";
  testutil::write_file(input, testutil::sample_pg_text());

  auto result = run({"convert", "--from", "pg", "--to", "neo4j", input.string()});
  CHECK(result.status == 2);
  CHECK(result.err.find("--output") != std::string::npos);
  CHECK(result.out.empty());
}

TEST_CASE("conversion to a directory writes all files and no temporaries") {
  testutil::TempDir dir;
  fs::path input = dir.path / "sample.pg";
  testutil::write_file(input, testutil::sample_pg_text());
  fs::path out = dir.path / "neo4j";

  auto result = run({"convert", "--to", "neo4j", "-o", out.string(), input.string()});
  CHECK(result.status == 0);
  CHECK(fs::exists(out / "nodes.csv"));
  CHECK(fs::exists(out / "edges.csv"));
  // warnings go to stderr
  CHECK(result.err.find("warning:") != std::string::npos);
  for (const auto& entry : fs::directory_iterator(out)) {
    CHECK(entry.path().extension() != ".tmp");
  }

  auto pgx = run({"convert", "--to", "pgx", "-o", (dir.path / "pgx").string(), input.string()});
  CHECK(pgx.status == 0);
  CHECK(fs::exists(dir.path / "pgx" / "graph.opv"));
  CHECK(fs::exists(dir.path / "pgx" / "graph.ope"));
  CHECK(fs::exists(dir.path / "pgx" / "graph.json"));

  auto neptune =
      run({"convert", "--to", "neptune", "-o", (dir.path / "nep").string(), input.string()});
  CHECK(neptune.status == 0);
  CHECK(fs::exists(dir.path / "nep" / "vertices.csv"));
}

TEST_CASE("a failed conversion leaves no partial output") {
  testutil::TempDir dir;
  fs::path input = dir.path / "bad.pg";
  testutil::write_file(input, "1 ->\n");
  fs::path out = dir.path / "neo4j";

  auto result = run({"convert", "--to", "neo4j", "-o", out.string(), input.string()});
  CHECK(result.status == 1);
  CHECK((!fs::exists(out) || fs::is_empty(out)));
}

TEST_CASE("pg to pg canonicalization is idempotent over the pipe") {
  std::string once_out;
  {
    auto once = run({"convert", "--from", "pg", "--to", "pg"}, testutil::sample_pg_text());
    CHECK(once.status == 0);
    once_out = once.out;
  }
  auto twice = run({"convert", "--from", "pg", "--to", "pg"}, once_out);
  CHECK(twice.status == 0);
  CHECK(twice.out == once_out);
}

TEST_CASE("diagnostics are formatted file:line:col: severity: message") {
  testutil::TempDir dir;
  fs::path input = dir.path / "bad.pg";
  testutil::write_file(input, "101 :Person\n1 ->\n");

  auto result = run({"validate", input.string()});
  CHECK(result.status == 1);
  std::regex format("^" + std::regex_replace(input.string(), std::regex("[.]"), "\\.") +
                    ":2:3: error: .*\n");
  CHECK(std::regex_search(result.err, format));

  auto stdin_result = run({"validate", "--from", "pg"}, "1 ->\n");
  CHECK(stdin_result.status == 1);
  CHECK(stdin_result.err.find("<stdin>:1:3: error:") != std::string::npos);
}

TEST_CASE("format is inferred from the extension and --from wins") {
  testutil::TempDir dir;
  fs::path as_json = dir.path / "graph.json";
  testutil::write_file(as_json, testutil::sample_json_text());
  CHECK(run({"validate", as_json.string()}).status == 0);

  fs::path as_pg = dir.path / "graph.pg";
  testutil::write_file(as_pg, testutil::sample_pg_text());
  CHECK(run({"validate", as_pg.string()}).status == 0);

  // a .json file parsed as pg via --from fails
  CHECK(run({"validate", "--from", "pg", as_json.string()}).status == 1);

  // stdin with no --from is a usage error
  auto result = run({"validate"}, "1\n");
  CHECK(result.status == 2);
  CHECK(result.err.find("--from") != std::string::npos);
}

TEST_CASE("json to pg conversion works") {
  auto result = run({"convert", "--from", "json", "--to", "pg"}, testutil::sample_json_text());
  CHECK(result.status == 0);
  pg::ParseResult back = pg::parse_pg(result.out);
  REQUIRE(back.ok());
  CHECK(pg::graph_equal(*back.graph, testutil::sample_graph()));
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({"convert", "--from", "pg"}, "").status == 2);          // missing --to
  CHECK(run({"frobnicate"}, "").status == 2);                       // unknown subcommand
  CHECK(run({"validate", "--from", "xml"}, "").status == 2);        // bad format
  CHECK(run({"validate", "--strict", "--lenient"}, "").status == 2);
  CHECK(run({"convert", "--from", "pg", "--to", "pg", "--undirected", "bogus"}, "").status == 2);
}

TEST_CASE("missing input file exits 3") {
  auto result = run({"validate", "/nonexistent/path/graph.pg"});
  CHECK(result.status == 3);
  CHECK(result.err.find("error:") != std::string::npos);

  testutil::TempDir dir;
  auto dir_as_input = run({"validate", "--from", "pg", dir.path.string()});
  CHECK(dir_as_input.status == 3);
  CHECK(dir_as_input.err.find("directory") != std::string::npos);
}

TEST_CASE("output to a file via --output") {
  testutil::TempDir dir;
  fs::path out = dir.path / "out.json";
  auto result = run({"convert", "--from", "pg", "--to", "json", "-o", out.string(), "-"},
                    testutil::sample_pg_text());
  CHECK(result.status == 0);
  CHECK(result.out.empty());
  pg::ParseResult back = pg::read_json_pg(testutil::read_file(out));
  REQUIRE(back.ok());
  CHECK(!fs::exists(dir.path / "out.json.tmp"));
}

TEST_CASE("strict and lenient flags reach the readers") {
  // strict: quoted node id rejected
  CHECK(run({"validate", "--from", "pg", "--strict"}, "\"1\" :A\n").status == 1);
  CHECK(run({"validate", "--from", "pg"}, "\"1\" :A\n").status == 0);

  // lenient: scalar property coerced with a warning, exit 0
  std::string doc = R"({"nodes":[{"id":1,"properties":{"k":"x"}}]})";
  auto strict_result = run({"validate", "--from", "json"}, doc);
  CHECK(strict_result.status == 1);
  auto lenient_result = run({"validate", "--from", "json", "--lenient"}, doc);
  CHECK(lenient_result.status == 0);
  CHECK(lenient_result.err.find("warning") != std::string::npos);
}

TEST_CASE("stdout stays clean when diagnostics are printed") {
  auto result = run({"convert", "--from", "pg", "--to", "json"}, "1 ->\n");
  CHECK(result.status == 1);
  CHECK(result.out.empty());
  CHECK(!result.err.empty());
}
