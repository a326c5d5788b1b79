// pgtool: parse, validate, and convert property graph files.
//
//   pgtool convert  --from pg --to json graph.pg
//   pgtool convert  --to neo4j -o outdir/ graph.pg
//   pgtool validate graph.json
//
// Diagnostics go to stderr as <file>:<line>:<col>: <severity>: <message>;
// converted data goes to stdout or to --output, so pipelines stay clean.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pg/convert.hpp"
#include "pg/json.hpp"
#include "pg/model.hpp"
#include "pg/text.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct Arguments {
  std::string input = "-";
  std::string from;
  std::string to;
  std::string output;
  bool strict = false;
  bool lenient = false;
  std::string undirected = "keep-once";
  std::string edge_label = "first";
};

std::string display_name(const std::string& input) {
  return input == "-" ? "<stdin>" : input;
}

void print_diagnostics(const std::string& name, const std::vector<pg::SourceDiagnostic>& diags) {
  for (const pg::SourceDiagnostic& d : diags) {
    std::cerr << name << ':' << d.line << ':' << d.column << ": "
              << (d.severity == pg::Severity::error ? "error" : "warning") << ": " << d.message
              << '\n';
  }
}

int usage_error(const std::string& message) {
  std::cerr << "error: " << message << '\n';
  return kExitUsage;
}

int io_error(const std::string& message) {
  std::cerr << "error: " << message << '\n';
  return kExitIo;
}

std::optional<std::string> resolve_format(const Arguments& args, std::string& error) {
  if (!args.from.empty()) return args.from;
  if (args.input.ends_with(".pg")) return "pg";
  if (args.input.ends_with(".json")) return "json";
  error = "cannot infer input format for '" + display_name(args.input) + "'; use --from pg|json";
  return std::nullopt;
}

bool read_input(const std::string& input, std::string& content, std::string& error) {
  if (input == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    content = buffer.str();
    return true;
  }
  std::error_code ec;
  if (fs::is_directory(input, ec)) {
    error = "cannot read '" + input + "': is a directory";
    return false;
  }
  std::ifstream file(input, std::ios::binary);
  if (!file) {
    error = "cannot open '" + input + "' for reading";
    return false;
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();
  if (file.bad()) {
    error = "failed while reading '" + input + "'";
    return false;
  }
  content = buffer.str();
  return true;
}

pg::ReadOptions read_options(const Arguments& args) {
  pg::ReadOptions options;
  if (args.strict) options.strictness = pg::Strictness::strict;
  if (args.lenient) options.strictness = pg::Strictness::lenient;
  return options;
}

// Parses the input and prints diagnostics; nullopt means exit kExitParse.
std::optional<pg::PropertyGraph> load_graph(const Arguments& args, const std::string& format,
                                            const std::string& content) {
  pg::ParseResult result = format == "pg" ? pg::parse_pg(content, read_options(args))
                                          : pg::read_json_pg(content, read_options(args));
  print_diagnostics(display_name(args.input), result.diagnostics);
  return std::move(result.graph);
}

bool write_file_atomic(const fs::path& target, const std::string& content, std::string& error) {
  fs::path temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      error = "cannot open '" + temp.string() + "' for writing";
      return false;
    }
    out << content;
    out.flush();
    if (!out) {
      error = "failed while writing '" + temp.string() + "'";
      out.close();
      std::error_code ec;
      fs::remove(temp, ec);
      return false;
    }
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    error = "cannot rename '" + temp.string() + "' to '" + target.string() + "': " + ec.message();
    fs::remove(temp, ec);
    return false;
  }
  return true;
}

int write_single_output(const Arguments& args, const std::string& payload) {
  if (args.output.empty() || args.output == "-") {
    std::cout << payload;
    std::cout.flush();
    return std::cout ? kExitOk : io_error("failed while writing to standard output");
  }
  std::error_code ec;
  if (fs::is_directory(args.output, ec)) {
    return usage_error("output '" + args.output + "' is a directory; expected a file path");
  }
  std::string error;
  if (!write_file_atomic(args.output, payload, error)) return io_error(error);
  return kExitOk;
}

int write_multi_output(const Arguments& args, const pg::ConversionOutput& output) {
  if (args.output.empty() || args.output == "-") {
    return usage_error("--to " + args.to + " writes multiple files; --output must name a directory");
  }
  fs::path dir(args.output);
  std::error_code ec;
  if (fs::exists(dir, ec) && !fs::is_directory(dir, ec)) {
    return usage_error("output '" + args.output + "' is not a directory");
  }
  fs::create_directories(dir, ec);
  if (ec) return io_error("cannot create directory '" + args.output + "': " + ec.message());

  // Stage everything under temporary names, then rename; a failure leaves
  // no partial output behind.
  std::vector<std::pair<fs::path, fs::path>> staged;
  auto cleanup = [&] {
    for (const auto& [temp, target] : staged) {
      std::error_code ignore;
      fs::remove(temp, ignore);
    }
  };
  for (const auto& [name, content] : output.files) {
    fs::path target = dir / name;
    fs::path temp = target;
    temp += ".tmp";
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      cleanup();
      return io_error("cannot open '" + temp.string() + "' for writing");
    }
    out << content;
    out.flush();
    if (!out) {
      cleanup();
      return io_error("failed while writing '" + temp.string() + "'");
    }
    staged.emplace_back(temp, target);
  }
  for (const auto& [temp, target] : staged) {
    fs::rename(temp, target, ec);
    if (ec) {
      cleanup();
      return io_error("cannot rename '" + temp.string() + "': " + ec.message());
    }
  }
  return kExitOk;
}

int run_convert(const Arguments& args) {
  std::string error;
  auto format = resolve_format(args, error);
  if (!format) return usage_error(error);

  std::string content;
  if (!read_input(args.input, content, error)) return io_error(error);

  auto graph = load_graph(args, *format, content);
  if (!graph) return kExitParse;

  if (args.to == "pg") return write_single_output(args, pg::serialize_pg(*graph));
  if (args.to == "json") return write_single_output(args, pg::write_json_pg(*graph));

  pg::ConversionOptions options;
  options.undirected = args.undirected == "duplicate" ? pg::UndirectedPolicy::duplicate_reversed
                                                      : pg::UndirectedPolicy::keep_once;
  options.edge_label = args.edge_label == "join" ? pg::EdgeLabelPolicy::join_underscore
                                                 : pg::EdgeLabelPolicy::first_label;
  pg::ConversionOutput output;
  if (args.to == "neo4j") {
    output = pg::to_neo4j(*graph, options);
  } else if (args.to == "neptune") {
    output = pg::to_neptune(*graph, options);
  } else {
    output = pg::to_pgx(*graph, options);
  }
  for (const pg::ConversionWarning& warning : output.warnings) {
    std::cerr << display_name(args.input) << ": warning: " << warning.message << '\n';
  }
  return write_multi_output(args, output);
}

int run_validate(const Arguments& args) {
  std::string error;
  auto format = resolve_format(args, error);
  if (!format) return usage_error(error);

  std::string content;
  if (!read_input(args.input, content, error)) return io_error(error);

  auto graph = load_graph(args, *format, content);
  return graph ? kExitOk : kExitParse;
}

void add_common_options(CLI::App* cmd, Arguments& args) {
  cmd->add_option("input", args.input, "Input file, or '-' for standard input");
  cmd->add_option("--from", args.from, "Input format (inferred from .pg/.json when omitted)")
      ->check(CLI::IsMember({"pg", "json"}));
  auto* strict = cmd->add_flag("--strict", args.strict,
                               "Reject quoted node IDs and edges to undeclared nodes");
  auto* lenient = cmd->add_flag("--lenient", args.lenient,
                                "Downgrade recoverable input problems to warnings");
  strict->excludes(lenient);
  lenient->excludes(strict);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Property graph interchange tool: flat-text PG, JSON-PG, and "
               "bulk-load outputs for Neo4j, Neptune, and PGX"};
  app.require_subcommand(1);

  Arguments convert_args;
  CLI::App* convert = app.add_subcommand("convert", "Convert between graph formats");
  add_common_options(convert, convert_args);
  convert->add_option("--to", convert_args.to, "Output format")
      ->required()
      ->check(CLI::IsMember({"pg", "json", "neo4j", "neptune", "pgx"}));
  convert->add_option("--output,-o", convert_args.output,
                      "Output file ('-' for stdout), or directory for multi-file targets");
  convert->add_option("--undirected", convert_args.undirected,
                      "Undirected edge policy for bulk-load targets")
      ->check(CLI::IsMember({"keep-once", "duplicate"}));
  convert->add_option("--edge-label", convert_args.edge_label,
                      "Multi-label edge policy for bulk-load targets")
      ->check(CLI::IsMember({"first", "join"}));

  Arguments validate_args;
  CLI::App* validate = app.add_subcommand("validate", "Parse and report diagnostics only");
  add_common_options(validate, validate_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (convert->parsed()) return run_convert(convert_args);
    return run_validate(validate_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
}
