#include <doctest.h>

#include <random>

#include "cgt/error.hpp"
#include "cgt/factor.hpp"
#include "cgt/groups.hpp"

using namespace cgt;
using namespace cgt::perm;
using namespace cgt::factor;

namespace {

GroupHandle build(const groups::GroupSpec &s) { return groups::construct(s); }

GroupHandle point_stabilizer(const GroupHandle &G, Point p) {
  return pointwise_stabilizer(G, {p});
}

// G = HK iff H is transitive on the cosets of K.
bool transitive_on_cosets(const GroupHandle &G, const GroupHandle &H, const GroupHandle &K) {
  auto act = coset_action(G, K);
  std::vector<Permutation> gens;
  for (const auto &h : H.generators())
    gens.push_back(act.image_of(h));
  return orbit(GroupHandle(act.image.degree(), gens), 0).size() == act.image.degree();
}

// Some conjugate of M lies in L: M fixes a point of G/L.
bool conjugate_into(const GroupHandle &G, const GroupHandle &M, const GroupHandle &L) {
  auto act = coset_action(G, L);
  for (Point x = 0; x < act.image.degree(); ++x) {
    bool fixed = true;
    for (const auto &m : M.generators())
      fixed = fixed && act.image_of(m)[x] == x;
    if (fixed)
      return true;
  }
  return false;
}

bool core_free(const GroupHandle &G, const GroupHandle &H) {
  return coset_action(G, H).image.order() == G.order();
}

BigInt pp(const BigInt &n, const BigInt &p) { return numth::p_part(n, p).value; }

std::set<BigInt> primes(const BigInt &n) { return numth::prime_set(n); }

TableRow symplectic_row(std::string socle, unsigned p, unsigned e,
                        std::vector<std::vector<std::string>> A,
                        std::vector<std::vector<std::string>> B) {
  TableRow r;
  r.table = 1;
  r.row = "test";
  r.kind = AuditKind::symplectic;
  r.socle = std::move(socle);
  r.p = p;
  r.ppd_exponent = e;
  r.A = std::move(A);
  r.B = std::move(B);
  return r;
}

} // namespace

TEST_CASE("is_factorisation examples") {
  auto A6 = build(groups::alt(6));
  auto S6 = build(groups::sym(6));
  auto S4 = build(groups::sym(4));
  auto A5 = point_stabilizer(A6, 0);
  auto L25 = build(groups::psl2(5));
  REQUIRE(is_subgroup(L25, A6));
  CHECK(is_factorisation(A6, A5, L25));
  CHECK(transitive_on_cosets(A6, A5, L25));
  auto PGL = build(groups::pgl2(5));
  auto S5 = point_stabilizer(S6, 0);
  CHECK(is_factorisation(S6, PGL, S5));
  auto A4 = subgroup(S4, {Permutation::from_cycles("(1,2,3)", 4),
                          Permutation::from_cycles("(1,2)(3,4)", 4)});
  CHECK_FALSE(is_factorisation(S4, A4, A4));
  CHECK_THROWS_AS(is_factorisation(A5, A6, A5), Error);
}

TEST_CASE("product test agrees with transitivity on cosets") {
  std::mt19937_64 rng(11);
  auto S6 = build(groups::sym(6));
  for (int t = 0; t < 40; ++t) {
    auto H = subgroup(S6, {random_element(S6, rng), random_element(S6, rng)});
    auto K = subgroup(S6, {random_element(S6, rng)});
    if (H.order() == 1 || K.order() == 1)
      continue;
    CHECK(is_factorisation(S6, H, K) == transitive_on_cosets(S6, H, K));
  }
}

TEST_CASE("is_homogeneous_pair examples") {
  auto A6 = build(groups::alt(6));
  auto A5 = point_stabilizer(A6, 0);
  auto L25 = build(groups::psl2(5));
  CHECK(is_homogeneous_pair(A6, A5, L25, false));
  CHECK_FALSE(is_homogeneous_pair(A6, A5, L25, true));
  auto S5 = build(groups::sym(5));
  auto F20 = subgroup(S5, {Permutation::from_cycles("(1,2,3,4,5)", 5),
                           Permutation::from_cycles("(2,3,5,4)", 5)});
  REQUIRE(F20.order() == 20);
  CHECK_FALSE(is_homogeneous_pair(S5, F20, point_stabilizer(S5, 0), false));
}

TEST_CASE("search_homogeneous ground truth") {
  auto A6 = build(groups::alt(6));
  auto rA6 = search_homogeneous(A6);
  CHECK(rA6.certified);
  REQUIRE(rA6.witnesses.size() == 1);
  CHECK(rA6.witnesses[0].order == 60);
  CHECK(rA6.witnesses[0].intersection_order == 10);
  bool one_transitive = is_transitive(rA6.witnesses[0].H) != is_transitive(rA6.witnesses[0].K);
  CHECK(one_transitive);

  auto S6 = build(groups::sym(6));
  auto rS6 = search_homogeneous(S6);
  CHECK(rS6.certified);
  REQUIRE(rS6.witnesses.size() == 1);
  CHECK(rS6.witnesses[0].order == 120);
  CHECK(rS6.witnesses[0].intersection_order == 20);

  for (auto spec : {groups::sym(4), groups::sym(5)}) {
    auto r = search_homogeneous(build(spec));
    CHECK(r.certified);
    CHECK(r.witnesses.empty());
  }
}

TEST_CASE("stage counts decrease and witnesses satisfy the product formula") {
  for (auto spec : {groups::alt(6), groups::sym(6), groups::psl2(7), groups::pgl2(7),
                    groups::wreath(groups::sym(3), 2), groups::sp(4, 2)}) {
    auto G = build(spec);
    auto r = search_homogeneous(G);
    CHECK(r.counts.p_part >= r.counts.equal_order);
    CHECK(r.counts.equal_order >= r.counts.product);
    CHECK(r.counts.product >= r.counts.isomorphic);
    CHECK(r.counts.isomorphic == r.witnesses.size());
    for (const auto &w : r.witnesses) {
      CHECK(G.order() * w.intersection_order == w.H.order() * w.K.order());
      CHECK(w.H.order() == w.K.order());
      CHECK(is_homogeneous_pair(G, w.H, w.K, false));
      // Both factors carry every prime of G with at least half its exponent.
      CHECK(primes(w.H.order()) == primes(w.K.order()));
      for (const auto &p : primes(G.order()))
        CHECK(pp(w.H.order(), p) * pp(w.H.order(), p) >= pp(G.order(), p));
    }
  }
}

TEST_CASE("search is symmetric in the two factors") {
  auto A6 = build(groups::alt(6));
  auto r = search_homogeneous(A6);
  REQUIRE(r.witnesses.size() == 1);
  const auto &w = r.witnesses[0];
  CHECK(is_homogeneous_pair(A6, w.K, w.H, false));
  // A pair is reported once regardless of which class comes first.
  CHECK(r.counts.isomorphic == 1);
}

TEST_CASE("minimum order and divisibility options") {
  auto S6 = build(groups::sym(6));
  SearchOptions o;
  o.min_order = BigInt(121);
  CHECK(search_homogeneous(S6, o).witnesses.empty());
  SearchOptions d;
  d.order_divisible_by = {BigInt(8)};
  CHECK(search_homogeneous(S6, d).witnesses.size() == 1);
  d.order_divisible_by = {BigInt(16)};
  CHECK(search_homogeneous(S6, d).witnesses.empty());
}

TEST_CASE("no group is the product of two conjugate proper subgroups") {
  for (auto spec : {groups::sym(5), groups::alt(6), groups::psl2(7), groups::sp(2, 3)}) {
    auto G = build(spec);
    SearchOptions o;
    o.require_conjugate = true;
    CHECK(search_homogeneous(G, o).witnesses.empty());
    std::mt19937_64 rng(5);
    for (const auto &c : subgroups::subgroup_classes(G).classes) {
      if (c.order == G.order() || c.order == 1 || is_normal(G, c.representative))
        continue;
      auto N = subgroups::normalizer(G, c.representative);
      if (N.order() == G.order())
        continue;
      for (int t = 0; t < 3; ++t) {
        auto g = random_element(G, rng);
        CHECK_FALSE(is_factorisation(G, N, conjugate(N, g)));
      }
    }
  }
}

namespace {

// Core-free maximal subgroups of G, one per class.
std::vector<GroupHandle> core_free_maximals(const GroupHandle &G) {
  std::vector<GroupHandle> proper, out;
  for (const auto &c : subgroups::subgroup_classes(G).classes)
    if (c.order != G.order() && c.order != 1)
      proper.push_back(c.representative);
  for (const auto &M : proper) {
    bool is_max = true;
    for (const auto &L : proper)
      if (L.order() > M.order() && conjugate_into(G, M, L)) {
        is_max = false;
        break;
      }
    if (is_max && core_free(G, M))
      out.push_back(M);
  }
  return out;
}

GroupHandle join(const GroupHandle &G, const GroupHandle &A, const GroupHandle &B) {
  auto gens = A.generators();
  gens.insert(gens.end(), B.generators().begin(), B.generators().end());
  return subgroup(G, gens);
}

} // namespace

TEST_CASE("core-free factorizations refine to core-free maximal factorizations") {
  for (auto spec : {groups::sym(5), groups::alt(6), groups::pgl2(7), groups::sym(6)}) {
    auto G = build(spec);
    auto L = perfect_residual(G);
    std::vector<GroupHandle> proper;
    for (const auto &c : subgroups::subgroup_classes(G).classes)
      if (c.order != G.order() && c.order != 1 && core_free(G, c.representative))
        proper.push_back(c.representative);
    for (std::size_t i = 0; i < proper.size(); ++i)
      for (std::size_t j = i; j < proper.size(); ++j) {
        const auto &A = proper[i], &B = proper[j];
        if (!is_factorisation(G, A, B))
          continue;
        auto Gs = subgroups::intersection(join(G, A, L), join(G, B, L));
        auto AL = subgroups::intersection(A, L), BL = subgroups::intersection(B, L);
        auto maximal = core_free_maximals(Gs);
        bool found = false;
        for (const auto &X : maximal)
          for (const auto &Y : maximal)
            if (!found && conjugate_into(Gs, AL, X) && conjugate_into(Gs, BL, Y) &&
                is_factorisation(Gs, X, Y))
              found = true;
        CHECK_MESSAGE(found, spec.to_string() << " orders " << A.order() << "," << B.order());
      }
  }
}

TEST_CASE("wreath projections") {
  auto W = build(groups::wreath(groups::sp(2, 3), 2));
  REQUIRE(W.order() == 1152);
  auto full = wreath_projections(W, W);
  CHECK(full.pi_image.order() == 2);
  REQUIRE(full.phi_images.size() == 2);
  CHECK(full.phi_images[0].order() == 24);
  CHECK(full.phi_images[1].order() == 24);
  CHECK(full.base_part.order() == 576);

  auto bt = groups::base_and_top(W);
  auto base = wreath_projections(W, bt.base);
  CHECK(base.pi_image.order() == 1);
  CHECK(base.base_part.order() == 576);

  // Diagonal {(x, x)} together with the block swap.
  const std::size_t d = W.wreath()->component_degree;
  std::vector<Permutation> gens;
  for (const auto &x : W.wreath()->component_generators) {
    std::vector<Point> img(2 * d);
    for (std::size_t i = 0; i < d; ++i) {
      img[i] = x[static_cast<Point>(i)];
      img[d + i] = static_cast<Point>(d + x[static_cast<Point>(i)]);
    }
    gens.emplace_back(img);
  }
  std::vector<Point> swap(2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    swap[i] = static_cast<Point>(d + i);
    swap[d + i] = static_cast<Point>(i);
  }
  gens.emplace_back(swap);
  auto H = subgroup(W, gens);
  CHECK(H.order() == 48);
  auto pr = wreath_projections(W, H);
  CHECK(pr.pi_image.order() == 2);
  CHECK(pr.base_part.order() == 24);
  CHECK(pr.phi_images[0].order() == 24);
  CHECK(subgroups::are_isomorphic(pr.phi_images[1], build(groups::sp(2, 3))));

  CHECK_THROWS_AS(wreath_projections(build(groups::sym(4)), build(groups::sym(4))), Error);
}

TEST_CASE("homogeneous factorizations of wreath products have a transitive top factor") {
  for (auto spec : {groups::wreath(groups::sym(3), 2), groups::wreath(groups::alt(4), 2),
                    groups::wreath(groups::sp(2, 3), 2), groups::wreath(groups::sym(3), 3)}) {
    auto W = build(spec);
    auto r = search_homogeneous(W);
    const auto comp = W.wreath()->component_order;
    for (const auto &w : r.witnesses) {
      auto ph = wreath_projections(W, w.H);
      auto pk = wreath_projections(W, w.K);
      const bool th = is_transitive(ph.pi_image), tk = is_transitive(pk.pi_image);
      CHECK_MESSAGE((th || tk), spec.to_string());
      for (const auto *side : {&ph, &pk}) {
        if (!is_transitive(side->pi_image))
          continue;
        for (const auto &p : primes(comp)) {
          if (p == 2)
            continue;
          const BigInt a = pp(side->phi_images[0].order(), p);
          CHECK_MESSAGE(a * a >= pp(comp, p), spec.to_string() << " p=" << p);
        }
      }
    }
  }
}

TEST_CASE("group name orders") {
  CHECK(named_group_order("PSL(2,13)") == 1092);
  CHECK(named_group_order("PSp(4,3)") == 25920);
  CHECK(named_group_order("A(9)") == 181440);
  CHECK(named_group_order("S(9)") == 362880);
  CHECK(named_group_order("G2(3)") == 4245696);
  CHECK(named_group_order("2G2'(3)") == 504);
  CHECK(named_group_order("POmega-(6,3)") == 3265920);
  CHECK(named_group_order("POmega-(4,3)") == 360);
  CHECK(named_group_order("Omega(5,3)") == 25920);
  CHECK(named_group_order("POmega+(8,2)") == 174182400);
  CHECK(named_group_order("Sp(6,2)") == 1451520);
  CHECK_THROWS_AS(named_group_order("Foo(3,3)"), Error);
  CHECK_THROWS_AS(named_group_order("PSL 2 13"), Error);
  CHECK(order_expression("L/40", 25920) == 648);
  CHECK(order_expression("PSp(2,9)*2", 1) == 720);
  CHECK(order_expression("13063680", 1) == 13063680);
  CHECK_THROWS_AS(order_expression("L/7", 25920), Error);
}

TEST_CASE("table audit examples") {
  auto v = audit_table_row(symplectic_row("PSp(6,3)", 3, 6, {{"PSL(2,13)"}}, {{"PSp(4,3)"}}));
  CHECK(v.pass);
  REQUIRE(v.ppd.size() == 1);
  CHECK(v.ppd[0] == 7);
  CHECK(BigInt(1092) % 7 == 0);
  CHECK(BigInt(25920) % 7 != 0);

  auto q5 = audit_table_row(symplectic_row("PSp(4,5)", 5, 4, {{"PSp(2,25)"}}, {{}}));
  CHECK(q5.pass);
  REQUIRE(q5.ppd.size() == 1);
  CHECK(q5.ppd[0] == 13);
  CHECK(named_group_order("PSp(2,25)") == 7800);

  // Both sides divisible by the ppd prime.
  auto bad = audit_table_row(symplectic_row("PSp(6,3)", 3, 6, {{"PSL(2,13)"}}, {{"PSL(2,13)"}}));
  CHECK_FALSE(bad.pass);

  auto unknown = symplectic_row("PSp(6,3)", 3, 6, {{"Foo(2,13)"}}, {});
  CHECK_THROWS_AS(audit_table_row(unknown), Error);
}

TEST_CASE("shipped table rows all pass") {
  auto rows = load_table_rows(default_table_path());
  CHECK(rows.size() >= 40);
  std::set<int> tables;
  for (const auto &row : rows) {
    tables.insert(row.table);
    auto v = audit_table_row(row);
    std::string failed;
    for (const auto &c : v.checks)
      if (!c.pass)
        failed += c.name + ": " + c.detail + "; ";
    CHECK_MESSAGE(v.pass, "table " << row.table << " row " << row.row << ": " << failed);
  }
  CHECK(tables == std::set<int>{1, 2, 3, 4});
}
