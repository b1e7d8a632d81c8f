#include <doctest.h>

#include <random>

#include "cgt/cli.hpp"
#include "cgt/error.hpp"

using namespace cgt;
using namespace cgt::cli;

namespace {

std::size_t syntax_offset(const std::string &text) {
  try {
    parse_group_expr(text);
  } catch (const SyntaxError &e) {
    return e.offset();
  }
  FAIL("expected a syntax error for " << text);
  return 0;
}

// Random well-formed expressions of small depth.
std::string random_expr(std::mt19937_64 &rng, int depth) {
  const char *leaves[] = {"S(4)", "A(5)", "C(7)", "D(5)", "MC(13,3,3)", "Sp(2,3)",
                          "PSp(4,2)", "GO-(4,3)", "PSL2(7)", "PGL2(5)"};
  const auto pick = std::uniform_int_distribution<int>(0, 9)(rng);
  if (depth == 0 || pick < 5)
    return leaves[pick];
  if (pick < 8)
    return "wr(" + random_expr(rng, depth - 1) + "," + std::to_string(1 + pick % 3) + ")";
  return "x(" + random_expr(rng, depth - 1) + ", " + random_expr(rng, depth - 1) + ")";
}

} // namespace

TEST_CASE("group expression examples") {
  auto w = parse_group_expr("wr(Sp(2,3),4)");
  CHECK(w.kind == groups::Kind::Wreath);
  CHECK(w.params == std::vector<std::int64_t>{4});
  CHECK(w.args.at(0) == groups::sp(2, 3));
  CHECK(groups::spec_degree(w) == 32);
  CHECK(groups::spec_degree(parse_group_expr("PSp(4,3)")) == 40);
  CHECK(parse_group_expr(" x( A(5) , C(6) ) ") == groups::direct_product({groups::alt(5), groups::cyc(6)}));
  CHECK(parse_group_expr("GO-(4,3)") == groups::go_minus(4, 3));
  CHECK(parse_group_expr("MC(17,4,4)") == groups::metacyclic(17, 4, 4));
}

TEST_CASE("syntax errors carry byte offsets") {
  CHECK(syntax_offset("wr(S(3)") == 7);
  CHECK(syntax_offset("") == 0);
  CHECK(syntax_offset("Q(3)") == 0);
  CHECK(syntax_offset("S(3") == 3);
  CHECK(syntax_offset("S(3))") == 4);
  CHECK(syntax_offset("S(x)") == 2);
  CHECK(syntax_offset("x(S(3),)") == 7);
  CHECK(syntax_offset("wr(S(3),2,1)") == 9);
  CHECK(syntax_offset("S(99999999999999999999)") == 2);
  try {
    parse_group_expr("wr(S(3)");
  } catch (const SyntaxError &e) {
    CHECK(e.kind() == ErrorKind::syntax);
    CHECK(std::string(e.what()).find("offset 7") != std::string::npos);
  }
}

TEST_CASE("parameters outside the constructor domain") {
  for (const char *bad : {"MC(17,3,4)", "Sp(3,3)", "GO-(4,2)", "PSL2(6)", "S(0)", "D(2)"}) {
    INFO(bad);
    try {
      parse_group_expr(bad);
      FAIL("expected an error");
    } catch (const SyntaxError &) {
      FAIL("parameter errors are not syntax errors");
    } catch (const Error &e) {
      CHECK(e.kind() == ErrorKind::invalid_argument);
    }
  }
}

TEST_CASE("printing and parsing round-trip") {
  for (const char *e : {"A(6)", "S(5)", "S(6)", "wr(Sp(2,3),2)", "wr(Sp(2,3),4)",
                        "wr(Sp(2,3),6)", "MC(17,4,4)", "PSp(4,3)", "GO-(4,3)", "x(A(5),C(6))"}) {
    auto g = parse_group_expr(e);
    CHECK(g.to_string() == e);
    CHECK(parse_group_expr(g.to_string()) == g);
  }
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto text = random_expr(rng, 3);
    INFO(text);
    auto g = parse_group_expr(text);
    CHECK(parse_group_expr(g.to_string()) == g);
  }
}

TEST_CASE("subcommand outcomes and exit codes") {
  Options o;
  auto ord = run_order("wr(Sp(2,3),4)", o);
  CHECK(ord.exit_code == match);
  CHECK(ord.report["bsgs_order"] == 7962624);

  auto a6 = run_repro("a6-homfac", o);
  CHECK(a6.exit_code == match);
  CHECK(a6.report["witnesses"].size() == 1);
  CHECK(a6.report["witnesses"][0]["intersection_order"] == 10);

  auto s6 = run_repro("s6-homfac", o);
  CHECK(s6.exit_code == match);
  CHECK(s6.report["witnesses"][0]["order"] == 120);
  CHECK(s6.report["witnesses"][0]["intersection_order"] == 20);

  CHECK(run_repro("s5-homfac", o).exit_code == match);
  CHECK(run_repro("frob21-tournament", o).exit_code == match);
  CHECK(run_repro("flags-sp42", o).exit_code == match);
  CHECK(run_repro("table-audit-all", o).exit_code == match);
  CHECK_THROWS_AS(run_repro("no-such-run", o), Error);
  CHECK(repro_names().size() == 12);

  // The default enumeration envelope does not cover S9 without a minimum order.
  Options tight;
  tight.cap_order = 100;
  CHECK_THROWS_AS(run_subgroups("S(9)", tight), Error);
  try {
    run_subgroups("S(9)", tight);
  } catch (const Error &e) {
    CHECK(error_outcome(e).exit_code == non_certified);
  }
  try {
    parse_group_expr("wr(S(3)");
  } catch (const Error &e) {
    auto out = error_outcome(e);
    CHECK(out.exit_code == usage);
    CHECK(out.report["offset"] == 7);
  }
  Options floor;
  floor.min_order = 2520;
  auto s9 = run_subgroups("S(9)", floor);
  CHECK(s9.exit_code == non_certified);
  CHECK(s9.report["certified"] == false);
}

TEST_CASE("repro runs are deterministic under a fixed seed") {
  Options o;
  o.seed = 7;
  auto a = run_repro("c17-unique-sylow", o);
  auto b = run_repro("c17-unique-sylow", o);
  CHECK(a.exit_code == match);
  CHECK(a.report == b.report);
  auto d1 = run_digraph_analyze("MC(13,3,3)", o);
  auto d2 = run_digraph_analyze("MC(13,3,3)", o);
  CHECK(d1.report == d2.report);
  CHECK(d1.report["max_s_by_criterion"] == d1.report["max_s_by_orbits"]);
}

TEST_CASE("text rendering") {
  Json j{{"a", 1}, {"b", {{"c", "x"}}}, {"d", {1, 2}}};
  CHECK(render_text(j) == "a: 1\nb:\n  c: x\nd:\n  -: 1\n  -: 2\n");
}
