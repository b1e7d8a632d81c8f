#include "cgt/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "cgt/constructions.hpp"
#include "cgt/digraph.hpp"
#include "cgt/factor.hpp"
#include "cgt/linalg.hpp"
#include "cgt/numth.hpp"
#include "cgt/subgroups.hpp"

namespace cgt::cli {

using groups::GroupSpec;
using groups::Kind;
using perm::GroupHandle;

// ---------------------------------------------------------------------------
// Group expressions

namespace {

const std::map<std::string, Kind> &constructor_names() {
  static const std::map<std::string, Kind> names = {
      {"S", Kind::Sym},     {"A", Kind::Alt},        {"C", Kind::Cyc},
      {"D", Kind::Dih},     {"MC", Kind::Metacyclic}, {"Sp", Kind::Sp},
      {"PSp", Kind::PSp},   {"GO-", Kind::GOminus},  {"PSL2", Kind::PSL2},
      {"PGL2", Kind::PGL2}};
  return names;
}

class Parser {
public:
  explicit Parser(std::string_view text) : s_(text) {}

  GroupSpec parse() {
    GroupSpec g = expr();
    skip();
    if (pos_ != s_.size())
      throw SyntaxError(pos_, "unexpected '" + std::string(1, s_[pos_]) + "' after expression");
    return g;
  }

private:
  std::string_view s_;
  std::size_t pos_ = 0;

  void skip() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t'))
      ++pos_;
  }

  [[noreturn]] void expected(const std::string &what) {
    if (pos_ >= s_.size())
      throw SyntaxError(pos_, "expected " + what + " but the input ended");
    throw SyntaxError(pos_, "expected " + what + " but found '" + std::string(1, s_[pos_]) + "'");
  }

  void punct(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c)
      expected(std::string("'") + c + "'");
    ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  std::string name() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    // GO- carries its sign in the name.
    if (pos_ < s_.size() && s_[pos_] == '-' && s_.substr(start, pos_ - start) == "GO")
      ++pos_;
    if (pos_ == start)
      expected("a group name");
    return std::string(s_.substr(start, pos_ - start));
  }

  std::int64_t integer() {
    skip();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && s_[pos_] == '-')
      ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    std::int64_t v = 0;
    auto [end, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (ec == std::errc::result_out_of_range)
      throw SyntaxError(start, "integer out of range");
    if (ec != std::errc() || end != s_.data() + pos_) {
      pos_ = start;
      expected("an integer");
    }
    return v;
  }

  GroupSpec expr() {
    skip();
    const std::size_t at = pos_;
    const std::string n = name();
    GroupSpec g;
    if (n == "wr") {
      punct('(');
      GroupSpec a = expr();
      punct(',');
      const std::int64_t k = integer();
      punct(')');
      return groups::wreath(std::move(a), k);
    }
    if (n == "x") {
      punct('(');
      std::vector<GroupSpec> f{expr()};
      while (peek(','))
        punct(','), f.push_back(expr());
      punct(')');
      return groups::direct_product(std::move(f));
    }
    auto it = constructor_names().find(n);
    if (it == constructor_names().end())
      throw SyntaxError(at, "unknown group name '" + n + "'");
    g.kind = it->second;
    punct('(');
    g.params.push_back(integer());
    while (peek(','))
      punct(','), g.params.push_back(integer());
    punct(')');
    return g;
  }
};

} // namespace

GroupSpec parse_group_expr(std::string_view text) {
  GroupSpec g = Parser(text).parse();
  groups::validate(g);
  return g;
}

std::string grammar_help() {
  return "Group expressions:\n"
         "  expr := NAME '(' INT {',' INT} ')'\n"
         "        | 'wr' '(' expr ',' INT ')'\n"
         "        | 'x' '(' expr {',' expr} ')'\n"
         "  NAME := S | A | C | D | MC | Sp | PSp | GO- | PSL2 | PGL2\n"
         "  S(n), A(n), C(n), D(n) on n points; MC(n,r,m) = <x+1, rx> on Z/n;\n"
         "  Sp(2m,q) on nonzero vectors; PSp(2m,q) on projective points;\n"
         "  GO-(2m,q), q odd, on nonzero vectors; PSL2(q), PGL2(q) on q+1 points;\n"
         "  wr(E,k) = E wr S_k imprimitive; x(E,F,...) intransitive direct product.\n"
         "  Examples: wr(Sp(2,3),4)  PSp(4,3)  x(A(5),C(6))\n";
}

// ---------------------------------------------------------------------------
// Report helpers

namespace {

Json num(const BigInt &n) {
  if (n >= 0 && n <= std::numeric_limits<std::uint64_t>::max())
    return static_cast<std::uint64_t>(n);
  return n.str();
}

Json group_json(const GroupHandle &G) {
  Json gens = Json::array();
  for (const auto &g : G.generators())
    gens.push_back(g.to_cycles());
  return Json{{"degree", G.degree()}, {"order", num(G.order())}, {"generators", gens}};
}

void apply(const Options &opts) {
  if (opts.seed)
    perm::set_default_seed(*opts.seed);
}

GroupHandle build(const GroupSpec &spec, const Options &opts) {
  groups::ConstructOptions c;
  c.degree_cap = opts.cap_degree;
  return groups::construct(spec, c);
}

subgroups::EnumerationOptions enumeration(const Options &opts) {
  subgroups::EnumerationOptions e;
  e.exhaustive_limit = std::max<std::uint64_t>(opts.cap_order, e.naive_limit);
  return e;
}

std::string describe_action(const GroupHandle &H) {
  if (perm::is_transitive(H))
    return "transitive";
  std::ostringstream os;
  os << "orbits";
  for (const auto &o : perm::orbits(H))
    os << ' ' << o.size();
  return os.str();
}

Json factor_json(const factor::FactorisationReport &r) {
  Json w = Json::array();
  for (const auto &x : r.witnesses)
    w.push_back({{"order", num(x.order)},
                 {"intersection_order", num(x.intersection_order)},
                 {"H", group_json(x.H)},
                 {"H_action", describe_action(x.H)},
                 {"K", group_json(x.K)},
                 {"K_action", describe_action(x.K)}});
  Json div = Json::array();
  // Candidates are multiples of the p-part bound and of every divisor.
  BigInt multiple = numth::half_p_part_bound(r.group_order);
  for (const auto &d : r.order_divisible_by) {
    div.push_back(num(d));
    multiple = multiple / boost::multiprecision::gcd(multiple, d) * d;
  }
  return Json{{"group", r.group},
              {"group_order", num(r.group_order)},
              {"min_order", num(r.min_order)},
              {"index_bound", num(r.group_order / r.min_order)},
              {"search_index_bound", num(r.group_order / std::max(r.min_order, multiple))},
              {"require_conjugate", r.require_conjugate},
              {"order_divisible_by", div},
              {"classes", r.classes},
              {"strategy", subgroups::strategy_name(r.strategy)},
              {"stage_counts",
               {{"p_part", r.counts.p_part},
                {"equal_order", r.counts.equal_order},
                {"product", r.counts.product},
                {"isomorphic", r.counts.isomorphic},
                {"undecided", r.counts.undecided}}},
              {"certified", r.certified},
              {"witnesses", w}};
}

std::string factor_summary(const factor::FactorisationReport &r) {
  std::ostringstream os;
  os << r.group << ": |G| = " << r.group_order << ", " << r.classes << " classes of order >= "
     << r.min_order << " (" << subgroups::strategy_name(r.strategy) << "), "
     << r.witnesses.size() << " homogeneous factorisation(s), "
     << (r.certified ? "certified" : "NON-CERTIFIED");
  return os.str();
}

// Exit code of a reproduction: a mismatch is 1, an uncertified search whose
// partial result agrees with the expectation is 3.
int verdict(bool matches, bool certified) {
  if (!matches)
    return mismatch;
  return certified ? match : non_certified;
}

Outcome finish(Json report, bool matches, bool certified, const std::string &summary) {
  Outcome o;
  report["match"] = matches;
  report["certified"] = certified;
  o.exit_code = verdict(matches, certified);
  o.report = std::move(report);
  o.summary = summary + (o.exit_code == match           ? " [MATCH]"
                         : o.exit_code == non_certified ? " [NON-CERTIFIED]"
                                                        : " [MISMATCH]");
  return o;
}

} // namespace

// ---------------------------------------------------------------------------
// Subcommands

Outcome run_order(const std::string &expr, const Options &opts) {
  apply(opts);
  const GroupSpec spec = parse_group_expr(expr);
  const GroupHandle G = build(spec, opts);
  const BigInt formula = groups::spec_order(spec);
  Json r{{"command", "order"},
         {"expression", spec.to_string()},
         {"degree", G.degree()},
         {"bsgs_order", num(G.order())},
         {"formula_order", num(formula)},
         {"base", G.chain().base()}};
  return finish(std::move(r), G.order() == formula, true,
                spec.to_string() + ": BSGS order " + G.order().str() + ", formula " +
                    formula.str());
}

Outcome run_subgroups(const std::string &expr, const Options &opts) {
  apply(opts);
  const GroupSpec spec = parse_group_expr(expr);
  const GroupHandle G = build(spec, opts);
  const BigInt min = opts.min_order.value_or(1);
  auto cls = subgroups::subgroup_classes(G, min, enumeration(opts));
  Json list = Json::array();
  for (const auto &c : cls.classes)
    list.push_back({{"order", num(c.order)},
                    {"class_size", num(c.class_size)},
                    {"action", describe_action(c.representative)},
                    {"representative", group_json(c.representative)}});
  Outcome o;
  o.report = Json{{"command", "subgroups"},
                  {"expression", spec.to_string()},
                  {"group_order", num(G.order())},
                  {"min_order", num(min)},
                  {"strategy", subgroups::strategy_name(cls.strategy)},
                  {"certified", cls.certified},
                  {"count", cls.classes.size()},
                  {"classes", list}};
  o.exit_code = cls.certified ? match : non_certified;
  o.summary = spec.to_string() + ": " + std::to_string(cls.classes.size()) +
              " classes of order >= " + min.str() + " (" +
              subgroups::strategy_name(cls.strategy) + (cls.certified ? ")" : ", NON-CERTIFIED)");
  return o;
}

Outcome run_homfac(const std::string &expr, const Options &opts) {
  apply(opts);
  const GroupSpec spec = parse_group_expr(expr);
  const GroupHandle G = build(spec, opts);
  factor::SearchOptions so;
  so.require_conjugate = opts.require_conjugate;
  so.min_order = opts.min_order;
  so.enumeration = enumeration(opts);
  auto rep = factor::search_homogeneous(G, so);
  rep.group = spec.to_string();
  Outcome o;
  o.report = factor_json(rep);
  o.report["command"] = "homfac";
  o.exit_code = rep.certified ? match : non_certified;
  o.summary = factor_summary(rep);
  return o;
}

Outcome run_digraph_analyze(const std::string &expr, const Options &opts) {
  apply(opts);
  const GroupSpec spec = parse_group_expr(expr);
  const GroupHandle G = build(spec, opts);
  const GroupHandle H = perm::pointwise_stabilizer(G, {0});
  const auto g = constructions::antisymmetric_element(G, H, perm::default_seed());
  const auto D = digraph::coset_digraph(G, H, g);
  const std::size_t cap = 4;
  const auto by_criterion = digraph::max_s_by_criterion(D, cap);
  const auto by_orbits = digraph::max_s_by_orbits(D, cap);
  Json pp = Json::array();
  for (const auto &v : digraph::valency_p_part_check(D, static_cast<unsigned>(by_criterion)))
    pp.push_back({{"prime", num(v.prime)},
                  {"stabilizer_part", num(v.stabilizer_part)},
                  {"valency_part", num(v.valency_part)},
                  {"pass", v.pass}});
  Json r{{"command", "digraph-analyze"},
         {"expression", spec.to_string()},
         {"g", g.to_cycles()},
         {"vertices", D.vertices()},
         {"valency", digraph::valency(D)},
         {"connected", digraph::is_connected(D)},
         {"s_cap", cap},
         {"max_s_by_criterion", by_criterion},
         {"max_s_by_orbits", by_orbits},
         {"p_part_check", pp}};
  return finish(std::move(r), by_criterion == by_orbits, true,
                spec.to_string() + ": " + std::to_string(D.vertices()) + " vertices, valency " +
                    std::to_string(digraph::valency(D)) + ", s = " +
                    std::to_string(by_criterion) + " by the criterion and " +
                    std::to_string(by_orbits) + " by orbits");
}

namespace {

Json scan_json(const std::vector<digraph::Orbital> &scan) {
  Json list = Json::array();
  for (const auto &o : scan)
    list.push_back({{"rep", o.rep},
                    {"length", o.length},
                    {"self_paired", o.self_paired},
                    {"paired", o.paired},
                    {"witness", o.witness ? Json(o.witness->to_cycles()) : Json()}});
  return list;
}

std::size_t count_self_paired(const std::vector<digraph::Orbital> &scan) {
  return static_cast<std::size_t>(
      std::count_if(scan.begin(), scan.end(), [](const auto &o) { return o.self_paired; }));
}

} // namespace

Outcome run_selfpaired_scan(const std::string &expr, const Options &opts) {
  apply(opts);
  const GroupSpec spec = parse_group_expr(expr);
  const GroupHandle G = build(spec, opts);
  const auto scan = digraph::self_paired_scan(G);
  const std::size_t sp = count_self_paired(scan);
  Outcome o;
  o.report = Json{{"command", "selfpaired-scan"},
                  {"expression", spec.to_string()},
                  {"orbitals", scan.size()},
                  {"self_paired", sp},
                  {"all_self_paired", sp == scan.size()},
                  {"scan", scan_json(scan)}};
  o.summary = spec.to_string() + ": " + std::to_string(sp) + " of " +
              std::to_string(scan.size()) + " orbitals self-paired";
  return o;
}

namespace {

Json audit_json(const factor::AuditVerdict &v) {
  Json checks = Json::array();
  for (const auto &c : v.checks)
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  Json ppd = Json::array();
  for (const auto &r : v.ppd)
    ppd.push_back(num(r));
  return Json{{"table", v.row.table},       {"row", v.row.row},
              {"printed", v.row.printed},   {"instantiation", v.row.instantiation},
              {"socle", v.row.socle},       {"socle_order", num(v.socle_order)},
              {"ppd", ppd},                 {"pass", v.pass},
              {"checks", checks}};
}

struct AuditResult {
  Json rows = Json::array();
  std::size_t passed = 0, total = 0;
};

AuditResult audit_all(const std::string &path) {
  AuditResult a;
  for (const auto &row : factor::load_table_rows(path.empty() ? factor::default_table_path() : path)) {
    const auto v = factor::audit_table_row(row);
    a.rows.push_back(audit_json(v));
    a.passed += v.pass;
    ++a.total;
  }
  return a;
}

} // namespace

Outcome run_table_audit(const std::string &path, const Options &opts) {
  apply(opts);
  auto a = audit_all(path);
  Json r{{"command", "table-audit"},
         {"rows", a.total},
         {"passed", a.passed},
         {"audit", std::move(a.rows)}};
  return finish(std::move(r), a.passed == a.total && a.total > 0, true,
                std::to_string(a.passed) + " of " + std::to_string(a.total) +
                    " table rows pass the audit");
}

namespace {

Json restriction_json(const linalg::FormRestriction &f) {
  return Json{{"dim", f.dim}, {"rank", f.rank}, {"radical_dim", f.radical_dim}};
}

Json profile_json(const linalg::PairProfile &p) {
  return Json{{"dim1", p.dim1},
              {"dim2", p.dim2},
              {"dim_meet", p.dim_meet},
              {"meet", restriction_json(p.meet)},
              {"w1_meet_w2perp", restriction_json(p.w1_meet_w2perp)},
              {"w2_meet_w1perp", restriction_json(p.w2_meet_w1perp)}};
}

} // namespace

Outcome run_geometry(const Options &opts) {
  apply(opts);
  const auto ex = constructions::c1_pair_example();
  const auto p = linalg::pair_profile(ex.W1, ex.W2);
  const auto swapped = linalg::pair_profile(ex.W2, ex.W1);
  const auto sp = digraph::is_self_paired(ex.orbit.group, ex.w1, ex.w2);
  const bool nondegenerate = p.w1_meet_w2perp.dim == 2 && p.w1_meet_w2perp.rank == 2;
  const bool isotropic = p.w2_meet_w1perp.dim == 2 && p.w2_meet_w1perp.rank == 0;
  Json r{{"command", "geometry"},
         {"dimension", 12},
         {"field", 2},
         {"orbit_size", ex.orbit.points.size()},
         {"profile", profile_json(p)},
         {"swapped_profile", profile_json(swapped)},
         {"w1_meet_w2perp_nondegenerate", nondegenerate},
         {"w2_meet_w1perp_totally_isotropic", isotropic},
         {"self_paired", sp.self_paired}};
  return finish(std::move(r), nondegenerate && isotropic && !sp.self_paired && !(p == swapped),
                true,
                "W1 cap W2^perp: dim " + std::to_string(p.w1_meet_w2perp.dim) + " rank " +
                    std::to_string(p.w1_meet_w2perp.rank) + "; W2 cap W1^perp: dim " +
                    std::to_string(p.w2_meet_w1perp.dim) + " rank " +
                    std::to_string(p.w2_meet_w1perp.rank) + "; orbital " +
                    (sp.self_paired ? "self-paired" : "not self-paired"));
}

// ---------------------------------------------------------------------------
// Reproductions

namespace {

using Scenario = std::function<Outcome(const Options &)>;

factor::FactorisationReport search(const GroupHandle &G, const std::string &name,
                                   factor::SearchOptions so, const Options &opts) {
  so.enumeration.exhaustive_limit =
      std::max<std::uint64_t>(opts.cap_order, so.enumeration.exhaustive_limit);
  auto r = factor::search_homogeneous(G, so);
  r.group = name;
  return r;
}

// One witness of the given order, one side transitive and the other fixing a
// point.
Outcome natural_pair(const std::string &name, const groups::GroupSpec &spec, const BigInt &order,
                     const std::string &transitive, const std::string &intransitive,
                     const Options &opts) {
  const auto G = build(spec, opts);
  const auto r = search(G, spec.to_string(), {}, opts);
  bool ok = r.witnesses.size() == 1;
  if (ok) {
    const auto &w = r.witnesses[0];
    const bool ht = perm::is_transitive(w.H), kt = perm::is_transitive(w.K);
    ok = w.order == order && ht != kt && perm::orbits(ht ? w.K : w.H).size() == 2;
  }
  Json rep = factor_json(r);
  rep["repro"] = name;
  rep["expected"] = {{"witnesses", 1},
                     {"order", num(order)},
                     {"pair", {transitive + " (transitive)", intransitive + " (point stabilizer)"}}};
  return finish(std::move(rep), ok, r.certified, factor_summary(r));
}

Outcome empty_search(const std::string &name, const GroupHandle &G, const std::string &label,
                     const factor::SearchOptions &so, Json expected, const Options &opts,
                     bool extra_ok = true) {
  const auto r = search(G, label, so, opts);
  Json rep = factor_json(r);
  rep["repro"] = name;
  rep["expected"] = std::move(expected);
  return finish(std::move(rep), r.witnesses.empty() && extra_ok, r.certified, factor_summary(r));
}

Outcome sp23_s2(const Options &opts) {
  const auto spec = groups::wreath(groups::sp(2, 3), 2);
  const auto r = search(build(spec, opts), spec.to_string(), {}, opts);
  bool ok = r.witnesses.size() == 2 && r.min_order == 48;
  for (const auto &w : r.witnesses)
    ok = ok && w.order == 48 && w.intersection_order == 2;
  Json rep = factor_json(r);
  rep["repro"] = "sp23-s2-report";
  rep["expected"] = {{"min_order", 48},
                     {"witnesses", 2},
                     {"order", 48},
                     {"intersection_order", 2}};
  return finish(std::move(rep), ok, r.certified, factor_summary(r));
}

Outcome sp23_s4(const Options &opts) {
  const auto spec = groups::wreath(groups::sp(2, 3), 4);
  const auto G = build(spec, opts);
  const BigInt min = numth::half_p_part_bound(G.order());
  return empty_search("sp23-s4", G, spec.to_string(), {},
                      {{"min_order", 6912}, {"index_bound", 1152}, {"witnesses", 0}}, opts,
                      min == 6912 && G.order() / min == 1152);
}

Outcome sp23_s6_div(const Options &opts) {
  const auto spec = groups::wreath(groups::sp(2, 3), 6);
  const auto G = build(spec, opts);
  // |L_v| = 2^21 3^8 5 and |G_v| divides 2 |L_v| = |Sp(2,3) wr S6|.
  const BigInt Lv = numth::ipow(2, 21) * numth::ipow(3, 8) * 5;
  const BigInt d = digraph::forced_divisor(Lv, 2 * Lv, 3);
  factor::SearchOptions so;
  so.order_divisible_by = {d};
  Json expected{{"forced_divisor", num(numth::ipow(2, 14) * numth::ipow(3, 6) * 5)},
                {"witnesses", 0}};
  return empty_search("sp23-s6-div", G, spec.to_string(), so, std::move(expected), opts,
                      d == numth::ipow(2, 14) * numth::ipow(3, 6) * 5 && G.order() == 2 * Lv);
}

Outcome c4(const Options &opts) {
  const auto G = constructions::psp2_pgo4minus_ext();
  factor::SearchOptions so;
  so.require_conjugate = true;
  return empty_search("c4-psp2-pgo4", G, "(PSp(2,3) x PGO-(4,3)).2", so,
                      {{"group_order", 17280}, {"require_conjugate", true}, {"witnesses", 0}},
                      opts, G.order() == 17280);
}

Outcome c17(const Options &opts) {
  const auto spec = groups::metacyclic(17, 4, 4);
  const auto C = build(spec, opts);
  const auto cls = subgroups::subgroup_classes(C, 1, enumeration(opts));
  std::size_t classes17 = 0;
  BigInt size17 = 0;
  for (const auto &c : cls.classes)
    if (c.order == 17)
      ++classes17, size17 += c.class_size;
  const auto r = search(C, spec.to_string(), {}, opts);
  Json families = Json::array();
  bool s_ok = true;
  const std::pair<const char *, constructions::GroupAndSubgroup> fams[] = {
      {"PGammaL(2,16)", constructions::c17_4_in_pgaml2()},
      {"(C17:4) wr S2, diagonal", constructions::c17_4_diagonal_wreath()}};
  for (const auto &[label, GH] : fams) {
    const auto g = constructions::antisymmetric_element(GH.G, GH.H, perm::default_seed());
    const auto D = digraph::coset_digraph(GH.G, GH.H, g);
    const auto s = digraph::max_s_by_criterion(D, 4);
    s_ok = s_ok && s <= 1;
    families.push_back({{"group", label},
                        {"vertices", D.vertices()},
                        {"valency", digraph::valency(D)},
                        {"connected", digraph::is_connected(D)},
                        {"max_s", s}});
  }
  const bool ok = classes17 == 1 && size17 == 1 && r.witnesses.empty() && s_ok;
  Json rep{{"repro", "c17-unique-sylow"},
           {"group", spec.to_string()},
           {"subgroups_of_order_17", num(size17)},
           {"homogeneous_factorisations", r.witnesses.size()},
           {"digraphs", families},
           {"expected", {{"subgroups_of_order_17", 1}, {"homogeneous_factorisations", 0},
                         {"max_s_at_most", 1}}}};
  return finish(std::move(rep), ok, cls.certified && r.certified,
                "C17:4: " + size17.str() + " subgroup(s) of order 17, " +
                    std::to_string(r.witnesses.size()) + " homogeneous factorisation(s), s <= 1 " +
                    (s_ok ? "on both families" : "FAILS"));
}

Outcome flags(const Options &) {
  const auto fg = constructions::sp4_2_flags();
  const auto scan = digraph::self_paired_scan(fg.flags);
  const std::size_t sp = count_self_paired(scan);
  Json rep{{"repro", "flags-sp42"},
           {"points", fg.flag_list.size()},
           {"group_order", num(fg.flags.order())},
           {"orbitals", scan.size()},
           {"self_paired", sp},
           {"scan", scan_json(scan)},
           {"expected", {{"points", 45}, {"group_order", 1440}, {"all_self_paired", true}}}};
  const bool ok = fg.flag_list.size() == 45 && fg.flags.order() == 1440 && sp == scan.size();
  return finish(std::move(rep), ok, true,
                "45-flag action of <Sp(4,2), duality>: " + std::to_string(sp) + " of " +
                    std::to_string(scan.size()) + " orbitals self-paired");
}

Outcome geometry(const Options &opts) {
  Outcome o = run_geometry(opts);
  o.report["repro"] = "geometry-c1-example";
  return o;
}

Outcome tables(const Options &opts) {
  Outcome o = run_table_audit("", opts);
  // ppd(3,6) = {7}, 7 divides |PSL(2,13)| and avoids |PSp(4,3)|.
  const auto ppd = numth::ppd_set(3, 6);
  const bool psp63 = ppd == std::set<BigInt>{7} &&
                     factor::named_group_order("PSL(2,13)") % 7 == 0 &&
                     factor::named_group_order("PSp(4,3)") % 7 != 0;
  o.report["repro"] = "table-audit-all";
  o.report["psp63_row"] = {{"ppd_3_6", {7}},
                           {"divides_PSL(2,13)", true},
                           {"divides_PSp(4,3)", false},
                           {"holds", psp63}};
  if (!psp63) {
    o.exit_code = mismatch;
    o.report["match"] = false;
  }
  o.summary += psp63 ? "; ppd(3,6) = {7} for the PSp(6,3) row" : "; PSp(6,3) row FAILS";
  return o;
}

Outcome frob21(const Options &) {
  const auto G = constructions::frobenius21();
  const auto H = perm::pointwise_stabilizer(G, {0});
  const auto g = G.generators()[0];
  const auto D = digraph::coset_digraph(G, H, g);
  const auto a = digraph::max_s_by_criterion(D, 5), b = digraph::max_s_by_orbits(D, 5);
  bool tournament = true;
  for (perm::Point x = 0; x < D.vertices(); ++x)
    for (perm::Point y = 0; y < D.vertices(); ++y) {
      if (x == y)
        continue;
      const bool xy = std::count(D.out[x].begin(), D.out[x].end(), y) > 0;
      const bool yx = std::count(D.out[y].begin(), D.out[y].end(), x) > 0;
      tournament = tournament && xy != yx;
    }
  Json rep{{"repro", "frob21-tournament"},
           {"vertices", D.vertices()},
           {"valency", digraph::valency(D)},
           {"tournament", tournament},
           {"max_s_by_criterion", a},
           {"max_s_by_orbits", b},
           {"expected", {{"vertices", 7}, {"valency", 3}, {"max_s", 1}}}};
  const bool ok = D.vertices() == 7 && digraph::valency(D) == 3 && tournament && a == 1 && b == 1;
  return finish(std::move(rep), ok, true,
                "Frobenius 21 tournament: valency " + std::to_string(digraph::valency(D)) +
                    ", s = " + std::to_string(a) + " by the criterion and " + std::to_string(b) +
                    " by orbits");
}

const std::vector<std::pair<std::string, Scenario>> &registry() {
  static const std::vector<std::pair<std::string, Scenario>> r = {
      {"a6-homfac",
       [](const Options &o) {
         return natural_pair("a6-homfac", groups::alt(6), 60, "PSL(2,5)", "A5", o);
       }},
      {"s5-homfac",
       [](const Options &o) {
         return empty_search("s5-homfac", build(groups::sym(5), o), "S(5)", {},
                             {{"witnesses", 0}}, o);
       }},
      {"s6-homfac",
       [](const Options &o) {
         return natural_pair("s6-homfac", groups::sym(6), 120, "PGL(2,5)", "S5", o);
       }},
      {"sp23-s2-report", sp23_s2},
      {"sp23-s4", sp23_s4},
      {"sp23-s6-div", sp23_s6_div},
      {"c4-psp2-pgo4", c4},
      {"c17-unique-sylow", c17},
      {"flags-sp42", flags},
      {"geometry-c1-example", geometry},
      {"table-audit-all", tables},
      {"frob21-tournament", frob21},
  };
  return r;
}

} // namespace

const std::vector<std::string> &repro_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto &[k, v] : registry())
      n.push_back(k);
    return n;
  }();
  return names;
}

Outcome run_repro(const std::string &name, const Options &opts) {
  for (const auto &[k, run] : registry())
    if (k == name) {
      apply(opts);
      Outcome o = run(opts);
      o.report["command"] = "repro";
      return o;
    }
  fail(ErrorKind::invalid_argument, "unknown reproduction '" + name + "'");
}

Outcome error_outcome(const Error &e) {
  Outcome o;
  o.report = Json{{"error", error_kind_name(e.kind())}, {"message", e.what()}};
  if (const auto *s = dynamic_cast<const SyntaxError *>(&e))
    o.report["offset"] = s->offset();
  switch (e.kind()) {
  case ErrorKind::syntax:
  case ErrorKind::invalid_argument:
  case ErrorKind::precondition_violation:
  case ErrorKind::unsupported:
    o.exit_code = usage;
    break;
  case ErrorKind::resource_limit:
    o.exit_code = non_certified;
    break;
  default:
    o.exit_code = mismatch;
  }
  o.summary = std::string("error: ") + e.what();
  return o;
}

namespace {

void render(const Json &j, const std::string &indent, std::ostringstream &os) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = j.is_object() ? it.key() : "-";
    if (it->is_structured() && !it->empty()) {
      os << indent << key << ":\n";
      render(*it, indent + "  ", os);
    } else {
      os << indent << key << ": " << (it->is_string() ? it->get<std::string>() : it->dump())
         << '\n';
    }
  }
}

} // namespace

std::string render_text(const Json &report) {
  std::ostringstream os;
  render(report, "", os);
  return os.str();
}

} // namespace cgt::cli
