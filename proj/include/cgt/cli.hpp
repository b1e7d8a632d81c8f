/**
 * @file cli.hpp
 * @brief Group expression parser, subcommand runners and the registry of
 *        named reproductions behind the cgt command-line tool.
 */
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cgt/error.hpp"
#include "cgt/groups.hpp"

namespace cgt::cli {

using Json = nlohmann::ordered_json;

/// expr := NAME '(' INT {',' INT} ')' | 'wr' '(' expr ',' INT ')'
///       | 'x' '(' expr {',' expr} ')'
/// with NAME one of S, A, C, D, MC, Sp, PSp, GO-, PSL2, PGL2. Whitespace
/// between tokens is ignored. Syntax errors carry the byte offset of the
/// offending token; parameters outside a constructor's domain are
/// invalid-argument.
groups::GroupSpec parse_group_expr(std::string_view text);

/// The grammar and the constructor names, for --help.
std::string grammar_help();

enum ExitCode : int { match = 0, mismatch = 1, usage = 2, non_certified = 3 };

struct Options {
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::uint64_t cap_degree = 10000;
  /// Largest group order enumerated exhaustively.
  std::uint64_t cap_order = 20000;
  std::optional<BigInt> min_order;
  bool require_conjugate = false;
};

struct Outcome {
  Json report;
  int exit_code = match;
  /// One or more human-readable lines.
  std::string summary;
};

Outcome run_order(const std::string &expr, const Options &opts);
Outcome run_subgroups(const std::string &expr, const Options &opts);
Outcome run_homfac(const std::string &expr, const Options &opts);
/// Cos(G, G_0, g) for a seeded random g with g^-1 outside G_0 g G_0.
Outcome run_digraph_analyze(const std::string &expr, const Options &opts);
Outcome run_selfpaired_scan(const std::string &expr, const Options &opts);
/// An empty path selects the shipped table data.
Outcome run_table_audit(const std::string &path, const Options &opts);
Outcome run_geometry(const Options &opts);

const std::vector<std::string> &repro_names();
/// Unknown names are invalid-argument.
Outcome run_repro(const std::string &name, const Options &opts);

/// Exit code and JSON body for an error escaping a runner.
Outcome error_outcome(const Error &e);

/// Indented key: value rendering of a report.
std::string render_text(const Json &report);

} // namespace cgt::cli
