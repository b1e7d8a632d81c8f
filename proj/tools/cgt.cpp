// cgt: group expressions, homogeneous factorisations, digraph checks and
// named reproductions. JSON on stdout, a summary on stderr.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cgt/cli.hpp"

namespace {

using namespace cgt;

int emit(const cli::Outcome &o, const std::string &format, const std::string &out,
         double seconds) {
  const std::string body = format == "text" ? cli::render_text(o.report) : o.report.dump(2) + "\n";
  if (out.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "error: cannot write " << out << '\n';
      return cli::usage;
    }
    f << body;
  }
  std::cerr << o.summary << " (" << seconds << " s, exit " << o.exit_code << ")\n";
  return o.exit_code;
}

bool is_decimal(const std::string &s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Permutation group computations for arc-transitive digraph stabilizers."};
  app.footer(cli::grammar_help() + "\nReproductions:\n  " + [] {
    std::string s;
    for (const auto &n : cli::repro_names())
      s += n + "\n  ";
    return s;
  }() + "\nExit codes: 0 match, 1 mismatch, 2 usage, 3 resource limit or non-certified.");
  app.require_subcommand(1);

  cli::Options opts;
  std::uint64_t seed = 0;
  std::string min_order, out, format = "json";
  auto *seed_opt = app.add_option("--seed", seed, "Seed for randomized algorithms");
  app.add_option("--threads", opts.threads, "Worker threads (searches currently run on one)")
      ->check(CLI::PositiveNumber);
  app.add_option("--cap-degree", opts.cap_degree, "Largest degree constructed")
      ->check(CLI::PositiveNumber);
  app.add_option("--cap-order", opts.cap_order, "Largest order enumerated exhaustively")
      ->check(CLI::PositiveNumber);
  app.add_option("--min-order", min_order, "Smallest subgroup order considered");
  app.add_flag("--require-conjugate", opts.require_conjugate,
               "Homogeneous factorisations with conjugate factors only");
  app.add_option("--out", out, "Write the report to a file instead of standard output");
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "text"}));

  std::string expr, name, path;
  auto with_expr = [&](const char *cmd, const char *help) {
    auto *s = app.add_subcommand(cmd, help);
    s->add_option("expr", expr, "Group expression")->required();
    s->fallthrough();
    return s;
  };
  auto *order = with_expr("order", "BSGS order against the closed formula");
  auto *subs = with_expr("subgroups", "Conjugacy classes of subgroups");
  auto *homfac = with_expr("homfac", "Homogeneous factorisations G = HK");
  auto *digraph = with_expr("digraph-analyze", "Cos(G, G_0, g) for a seeded g: valency and s");
  auto *scan = with_expr("selfpaired-scan", "Self-paired orbitals of a transitive group");
  auto *audit = app.add_subcommand("table-audit", "Divisibility audit of the factorisation tables");
  audit->add_option("path", path, "Table data (defaults to the shipped file)");
  audit->fallthrough();
  auto *geometry = app.add_subcommand("geometry", "Subspace pair certificate in dimension 12");
  geometry->fallthrough();
  auto *repro = app.add_subcommand("repro", "Run a named reproduction");
  repro->add_option("name", name, "Reproduction name")
      ->required()
      ->check(CLI::IsMember(cli::repro_names()));
  repro->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::usage;
  }
  if (*seed_opt)
    opts.seed = seed;
  if (!min_order.empty()) {
    if (!is_decimal(min_order)) {
      std::cerr << "error: --min-order expects a non-negative integer\n";
      return cli::usage;
    }
    opts.min_order = BigInt(min_order);
  }

  const auto t0 = std::chrono::steady_clock::now();
  cli::Outcome o;
  try {
    if (*order)
      o = cli::run_order(expr, opts);
    else if (*subs)
      o = cli::run_subgroups(expr, opts);
    else if (*homfac)
      o = cli::run_homfac(expr, opts);
    else if (*digraph)
      o = cli::run_digraph_analyze(expr, opts);
    else if (*scan)
      o = cli::run_selfpaired_scan(expr, opts);
    else if (*audit)
      o = cli::run_table_audit(path, opts);
    else if (*geometry)
      o = cli::run_geometry(opts);
    else
      o = cli::run_repro(name, opts);
  } catch (const Error &e) {
    o = cli::error_outcome(e);
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return emit(o, format, out, seconds);
}
