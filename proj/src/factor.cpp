#include "cgt/factor.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "cgt/error.hpp"
#include "cgt/groups.hpp"
#include "cgt/numth.hpp"

namespace cgt::factor {

bool is_factorisation(const GroupHandle &G, const GroupHandle &H, const GroupHandle &K) {
  if (!perm::is_subgroup(H, G) || !perm::is_subgroup(K, G))
    fail(ErrorKind::precondition_violation, "is_factorisation: H and K must lie in G");
  return G.order() * subgroups::intersection(H, K).order() == H.order() * K.order();
}

bool is_homogeneous_pair(const GroupHandle &G, const GroupHandle &H, const GroupHandle &K,
                         bool require_conjugate) {
  const BigInt order = G.order();
  if (H.order() != K.order() || H.order() == order)
    return false;
  if (!is_factorisation(G, H, K))
    return false;
  if (require_conjugate)
    return subgroups::is_conjugate_subgroup(G, H, K).has_value();
  return subgroups::are_isomorphic(H, K, std::numeric_limits<std::uint64_t>::max());
}

namespace {

bool divides(const BigInt &d, const BigInt &n) { return d != 0 && n % d == 0; }

// Groups above this order are not enumerated element by element.
constexpr std::uint64_t kElementCap = 1u << 18;

// Random elements of H are added until they generate H.
std::vector<Permutation> short_generators(const GroupHandle &H) {
  std::mt19937_64 rng(perm::default_seed());
  std::vector<Permutation> out;
  while (perm::build_chain(H.degree(), out).order() != H.order())
    out.push_back(perm::random_element(H, rng));
  return out;
}

// G = HK iff H is transitive on the cosets of K.
bool transitive_on_cosets(const perm::ActionMap &cosets, const std::vector<Permutation> &gens) {
  const std::size_t n = cosets.reps.size();
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> orb{0};
  seen[0] = 1;
  for (std::size_t k = 0; k < orb.size() && orb.size() < n; ++k)
    for (const auto &h : gens) {
      const auto y = cosets.point_of(cosets.reps[orb[k]] * h);
      if (!seen[y]) {
        seen[y] = 1;
        orb.push_back(y);
      }
    }
  return orb.size() == n;
}

std::vector<BigInt> derived_orders(const GroupHandle &H) {
  std::vector<BigInt> out;
  for (const auto &D : perm::derived_series(H))
    out.push_back(D.order());
  return out;
}

} // namespace

FactorisationReport search_homogeneous(const GroupHandle &G, const SearchOptions &opts) {
  FactorisationReport rep;
  rep.group = G.to_string();
  rep.group_order = G.order();
  rep.require_conjugate = opts.require_conjugate;
  rep.order_divisible_by = opts.order_divisible_by;
  const BigInt bound = numth::half_p_part_bound(rep.group_order);
  rep.min_order = opts.min_order.value_or(bound);
  // Only classes satisfying the divisibility conditions can contribute; the
  // lifting strategy prunes with them.
  subgroups::EnumerationOptions eo = opts.enumeration;
  eo.multiple_of = bound;
  for (const auto &d : opts.order_divisible_by)
    eo.multiple_of = eo.multiple_of / boost::multiprecision::gcd(eo.multiple_of, d) * d;
  auto classes = subgroups::subgroup_classes(G, rep.min_order, eo);
  rep.classes = classes.classes.size();
  rep.strategy = classes.strategy;
  rep.certified = classes.certified;

  // The p-part condition |H|_p^2 >= |G|_p for every p is divisibility by the bound.
  std::vector<const subgroups::SubgroupClass *> cand;
  for (const auto &c : classes.classes) {
    if (BigInt(c.order) == rep.group_order || !divides(bound, c.order))
      continue;
    bool ok = true;
    for (const auto &d : opts.order_divisible_by)
      ok = ok && divides(d, c.order);
    if (ok)
      cand.push_back(&c);
  }
  std::vector<std::optional<perm::ActionMap>> actions(cand.size());
  std::vector<std::vector<Permutation>> sgens(cand.size());
  for (std::size_t i = 0; i < cand.size(); ++i)
    for (std::size_t j = i + 1; j < cand.size(); ++j) {
      ++rep.counts.p_part;
      const auto &H = cand[i]->representative;
      const auto &K = cand[j]->representative;
      if (cand[i]->order != cand[j]->order)
        continue;
      ++rep.counts.equal_order;
      if (!actions[j])
        actions[j] = perm::coset_action(G, K, std::numeric_limits<std::uint64_t>::max());
      if (sgens[i].empty())
        sgens[i] = short_generators(H);
      if (!transitive_on_cosets(*actions[j], sgens[i]))
        continue;
      const BigInt meet = H.order() * K.order() / rep.group_order;
      ++rep.counts.product;
      bool iso;
      if (opts.require_conjugate) {
        iso = subgroups::is_conjugate_subgroup(G, H, K).has_value();
      } else if (derived_orders(H) != derived_orders(K)) {
        iso = false;
      } else if (H.order() <= kElementCap) {
        iso = subgroups::are_isomorphic(H, K, kElementCap);
      } else if (subgroups::is_conjugate_subgroup(G, H, K)) {
        iso = true;
      } else {
        ++rep.counts.undecided;
        rep.certified = false;
        continue;
      }
      if (!iso)
        continue;
      ++rep.counts.isomorphic;
      rep.witnesses.push_back({H, K, H.order(), meet});
    }
  return rep;
}

WreathProjections wreath_projections(const GroupHandle &W, const GroupHandle &H) {
  if (!W.wreath())
    fail(ErrorKind::invalid_argument, "wreath_projections: group has no wreath structure");
  if (!perm::is_subgroup(H, W))
    fail(ErrorKind::precondition_violation, "wreath_projections: H is not a subgroup of W");
  const auto &w = *W.wreath();
  const std::size_t d = w.component_degree;
  std::vector<std::vector<perm::Point>> blocks(w.k);
  for (std::size_t b = 0; b < w.k; ++b)
    for (std::size_t x = 0; x < d; ++x)
      blocks[b].push_back(static_cast<perm::Point>(b * d + x));
  WreathProjections out;
  out.pi_image = perm::action_on_blocks(H, blocks);
  out.base_part = perm::block_kernel(H, blocks);
  for (std::size_t b = 0; b < w.k; ++b) {
    std::vector<Permutation> gens;
    for (const auto &g : out.base_part.generators()) {
      std::vector<perm::Point> img(d);
      for (std::size_t x = 0; x < d; ++x)
        img[x] = static_cast<perm::Point>(g[static_cast<perm::Point>(b * d + x)] - b * d);
      Permutation p(std::move(img));
      if (!p.is_identity())
        gens.push_back(std::move(p));
    }
    out.phi_images.emplace_back(d, std::move(gens));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Table audit

BigInt named_group_order(const std::string &name) {
  static const std::regex re(R"(^([A-Za-z0-9']+?)([+-]?)\((\d+)(?:,(\d+))?\)$)");
  std::smatch m;
  if (!std::regex_match(name, m, re))
    fail(ErrorKind::invalid_argument, "cannot parse group name '" + name + "'");
  const std::string fam = m[1].str();
  const std::string sign = m[2].str();
  const BigInt a(m[3].str());
  const bool two = m[4].matched;
  if (!two) {
    if (fam == "A" || fam == "Alt" || fam == "S" || fam == "Sym")
      return groups::classical_order(fam, static_cast<unsigned>(a), 2).value;
    if (fam == "G2'" && a == 2)
      return 6048; // G2(2)' = PSU3(3)
    if (fam == "2G2'" && a == 3)
      return 504; // 2G2(3)' = PSL2(8)
    std::string base = fam;
    if (!base.empty() && base.back() == '\'')
      base.pop_back();
    if (base == "G2" || base == "F4" || base == "Sz" || base == "2G2")
      return groups::classical_order(base, 0, a).value;
    fail(ErrorKind::invalid_argument, "group '" + name + "' needs two parameters");
  }
  return groups::classical_order(fam + sign, static_cast<unsigned>(a), BigInt(m[4].str())).value;
}

BigInt order_expression(const std::string &expr, const BigInt &socle_order) {
  std::size_t pos = expr.find_first_of("*/");
  std::string head = expr.substr(0, pos);
  BigInt v;
  if (head == "L")
    v = socle_order;
  else if (!head.empty() && std::all_of(head.begin(), head.end(), ::isdigit))
    v = BigInt(head);
  else
    v = named_group_order(head);
  while (pos != std::string::npos) {
    const char op = expr[pos];
    std::size_t next = expr.find_first_of("*/", pos + 1);
    BigInt k(expr.substr(pos + 1, next == std::string::npos ? std::string::npos : next - pos - 1));
    if (op == '*') {
      v *= k;
    } else {
      if (k == 0 || v % k != 0)
        fail(ErrorKind::invalid_argument, "order expression '" + expr + "' is not integral");
      v /= k;
    }
    pos = next;
  }
  return v;
}

namespace {

std::string join(const std::vector<std::string> &v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? ", " : "") + v[i];
  return s + "}";
}

BigInt product(const std::vector<std::string> &alt) {
  BigInt p = 1;
  for (const auto &t : alt)
    p *= named_group_order(t);
  return p;
}

} // namespace

AuditVerdict audit_table_row(const TableRow &row) {
  AuditVerdict v;
  v.row = row;
  v.socle_order = named_group_order(row.socle);
  const BigInt L = v.socle_order;
  for (const auto &r : numth::ppd_set(row.p, row.ppd_exponent * row.f))
    v.ppd.push_back(r);
  auto add = [&](std::string name, bool pass, std::string detail) {
    v.checks.push_back({std::move(name), pass, std::move(detail)});
  };
  const std::string pe = "ppd(" + std::to_string(row.p) + "," +
                         std::to_string(row.ppd_exponent * row.f) + ")";
  {
    std::ostringstream d;
    d << pe << " = {";
    for (std::size_t i = 0; i < v.ppd.size(); ++i)
      d << (i ? ", " : "") << v.ppd[i];
    d << "}";
    add("ppd nonempty", !v.ppd.empty(), d.str());
  }
  {
    bool ok = true;
    std::string bad;
    for (const auto *side : {&row.A, &row.B})
      for (const auto &alt : *side)
        for (const auto &t : alt)
          if (L % named_group_order(t) != 0) {
            ok = false;
            bad += " " + t;
          }
    add("factor orders divide |L|", ok, ok ? "|L| = " + L.str() : "fails for" + bad);
  }

  auto r_divides_all_A = [&](bool per_factor) {
    bool ok = true;
    std::string detail;
    for (const auto &r : v.ppd)
      for (const auto &alt : row.A) {
        if (alt.empty())
          continue;
        bool hit = false;
        if (per_factor) {
          hit = true;
          for (const auto &t : alt)
            hit = hit && named_group_order(t) % r == 0;
        } else {
          for (const auto &t : alt)
            hit = hit || named_group_order(t) % r == 0;
        }
        if (!hit) {
          ok = false;
          detail += " r=" + r.str() + " misses " + join(alt) + ";";
        }
      }
    return std::make_pair(ok, detail);
  };
  auto disjoint = [&]() {
    bool ok = true;
    std::string detail;
    for (const auto &a : row.A)
      for (const auto &b : row.B)
        for (const auto &s : a)
          for (const auto &t : b)
            if (named_group_order(s) == named_group_order(t)) {
              ok = false;
              detail += " " + s + " ~ " + t + ";";
            }
    return std::make_pair(ok, detail);
  };
  auto overgroups = [&]() {
    if (!row.X || !row.Y)
      return;
    BigInt x = order_expression(*row.X, L), y = order_expression(*row.Y, L);
    add("|L| divides |X cap L| |Y cap L|", (x * y) % L == 0,
        *row.X + " = " + x.str() + ", " + *row.Y + " = " + y.str());
    bool rx = false, ry = false;
    for (const auto &r : v.ppd) {
      rx = rx || x % r == 0;
      ry = ry || y % r == 0;
    }
    if (row.kind == AuditKind::symplectic) {
      add("r divides |X cap L|", rx, *row.X);
      add("r avoids |Y cap L|", !ry, *row.Y);
    } else {
      add("r divides |X cap L| and |Y cap L|", rx && ry, *row.X + ", " + *row.Y);
    }
  };

  switch (row.kind) {
  case AuditKind::symplectic: {
    auto [okA, dA] = r_divides_all_A(false);
    add("r divides the A side", okA, okA ? "every nonempty alternative" : dA);
    bool okB = true;
    std::string dB;
    for (const auto &r : v.ppd)
      for (const auto &alt : row.B) {
        BigInt prod = product(alt);
        if (prod % r == 0) {
          okB = false;
          dB += " r=" + r.str() + " divides " + join(alt) + ";";
        }
      }
    add("r avoids the B side", okB, okB ? "no B alternative is divisible by r" : dB);
    overgroups();
    break;
  }
  case AuditKind::exceptions:
    overgroups();
    break;
  case AuditKind::orthogonal: {
    if (row.m >= 7) {
      auto [ok, d] = r_divides_all_A(false);
      add("some A factor meets r", ok, ok ? "every A alternative" : d);
    }
    auto [ok, d] = disjoint();
    if (row.allow_common)
      add("common factor allowed", true, ok ? "sides disjoint" : "shared:" + d);
    else
      add("A and B share no factor", ok, ok ? "disjoint" : d);
    if (row.s_exponent) {
      auto sset = numth::ppd_set(row.p, *row.s_exponent * row.f);
      bool okS = !sset.empty();
      std::string dS;
      for (const auto &s : sset)
        for (const auto &a : row.A)
          for (const auto &b : row.B)
            if (product(a) % s == 0 && product(b) % s == 0) {
              okS = false;
              dS += " s=" + s.str() + " divides " + join(a) + " and " + join(b) + ";";
            }
      add("one side avoids s", okS, okS ? "ppd(" + std::to_string(row.p) + "," +
                                               std::to_string(*row.s_exponent * row.f) + ")"
                                        : dS);
    }
    overgroups();
    break;
  }
  case AuditKind::omega8plus: {
    auto [ok, d] = r_divides_all_A(true);
    add("every A factor meets r", ok, ok ? "all factors of all A alternatives" : d);
    auto [okD, dD] = disjoint();
    if (row.allow_common)
      add("common factor allowed", true, okD ? "sides disjoint" : "shared:" + dD);
    else
      add("A and B share no factor", okD, okD ? "disjoint" : dD);
    break;
  }
  }
  v.pass = true;
  for (const auto &c : v.checks)
    v.pass = v.pass && c.pass;
  return v;
}

std::vector<TableRow> load_table_rows(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    fail(ErrorKind::invalid_argument, "cannot open table data '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception &e) {
    fail(ErrorKind::invalid_argument, "table data '" + path + "': " + e.what());
  }
  static const std::map<std::string, AuditKind> kinds = {
      {"symplectic", AuditKind::symplectic},
      {"exceptions", AuditKind::exceptions},
      {"orthogonal", AuditKind::orthogonal},
      {"omega8plus", AuditKind::omega8plus}};
  std::vector<TableRow> rows;
  for (const auto &t : doc.at("tables")) {
    auto kind = kinds.find(t.at("check").get<std::string>());
    if (kind == kinds.end())
      fail(ErrorKind::invalid_argument, "unknown audit kind in table data");
    for (const auto &r : t.at("rows")) {
      TableRow row;
      row.table = t.at("table").get<int>();
      row.kind = kind->second;
      row.row = r.at("row").get<std::string>();
      row.printed = r.value("printed", "");
      row.instantiation = r.value("instantiation", "");
      row.socle = r.at("socle").get<std::string>();
      row.p = r.at("p").get<unsigned>();
      row.f = r.value("f", 1u);
      row.ppd_exponent = r.at("ppd_exponent").get<unsigned>();
      row.m = r.value("m", 0u);
      if (r.contains("s_exponent"))
        row.s_exponent = r.at("s_exponent").get<unsigned>();
      row.A = r.value("A", std::vector<std::vector<std::string>>{});
      row.B = r.value("B", std::vector<std::vector<std::string>>{});
      if (r.contains("X"))
        row.X = r.at("X").get<std::string>();
      if (r.contains("Y"))
        row.Y = r.at("Y").get<std::string>();
      row.allow_common = r.value("allow_common", false);
      row.note = r.value("note", "");
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string default_table_path() {
  if (const char *env = std::getenv("CGT_DATA_DIR"))
    return std::string(env) + "/factorisation_tables.json";
  return std::string(CGT_DATA_DIR) + "/factorisation_tables.json";
}

} // namespace cgt::factor
