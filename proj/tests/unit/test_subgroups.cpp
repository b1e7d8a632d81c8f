#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "cgt/error.hpp"
#include "cgt/groups.hpp"
#include "cgt/subgroups.hpp"

using namespace cgt;
using namespace cgt::perm;
using namespace cgt::subgroups;

namespace {

using ElementSet = std::set<std::vector<Point>>;

ElementSet element_set(const GroupHandle &G) {
  ElementSet s;
  for (const auto &x : elements(G))
    s.insert(x.images());
  return s;
}

std::multiset<BigInt> order_profile(const SubgroupClasses &c) {
  std::multiset<BigInt> out;
  for (const auto &x : c.classes)
    out.insert(x.order);
  return out;
}

BigInt total_subgroups(const SubgroupClasses &c) {
  BigInt t = 0;
  for (const auto &x : c.classes)
    t += c.classes.empty() ? 0 : x.class_size;
  return t;
}

GroupHandle quaternion() {
  return GroupHandle(8, {Permutation::from_cycles("(1,2,3,4)(5,6,7,8)", 8),
                         Permutation::from_cycles("(1,5,3,7)(2,8,4,6)", 8)});
}

GroupHandle random_subgroup(const GroupHandle &G, std::mt19937_64 &rng, int ngens) {
  std::vector<Permutation> gens;
  for (int i = 0; i < ngens; ++i)
    gens.push_back(random_element(G, rng));
  return GroupHandle(G.degree(), gens);
}

// Every subgroup as an element set: cyclic subgroups joined pairwise until
// nothing new appears.
std::set<ElementSet> all_subgroups_brute(const GroupHandle &G) {
  const auto n = G.degree();
  auto close = [&](const ElementSet &seed) {
    std::vector<Permutation> gens;
    for (const auto &x : seed)
      gens.emplace_back(x);
    ElementSet out{Permutation(n).images()};
    std::vector<Permutation> queue{Permutation(n)};
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (const auto &g : gens) {
        Permutation y = queue[h] * g;
        if (out.insert(y.images()).second)
          queue.push_back(y);
      }
    return out;
  };
  std::set<ElementSet> subs;
  for (const auto &x : elements(G))
    subs.insert(close({x.images()}));
  std::vector<ElementSet> cyclic(subs.begin(), subs.end());
  std::vector<ElementSet> work(subs.begin(), subs.end());
  for (std::size_t i = 0; i < work.size(); ++i)
    for (const auto &c : cyclic) {
      ElementSet u = work[i];
      u.insert(c.begin(), c.end());
      auto v = close(u);
      if (subs.insert(v).second)
        work.push_back(v);
    }
  return subs;
}

} // namespace

TEST_CASE("subgroup class counts of small groups") {
  struct Row {
    groups::GroupSpec spec;
    std::size_t classes;
    long total;
  };
  std::vector<Row> rows{{groups::sym(4), 11, 30},      {groups::alt(4), 5, 10},
                        {groups::alt(5), 9, 59},       {groups::sym(5), 19, 156},
                        {groups::dih(4), 8, 10},       {groups::psl2(7), 15, 179},
                        {groups::sym(6), 56, 1455},    {groups::alt(6), 22, 501}};
  for (const auto &r : rows) {
    auto G = groups::construct(r.spec);
    auto c = subgroup_classes(G);
    INFO(r.spec.to_string());
    CHECK(c.certified);
    CHECK(c.classes.size() == r.classes);
    CHECK(total_subgroups(c) == r.total);
  }
  auto c = subgroup_classes(quaternion());
  CHECK(c.classes.size() == 6);
}

TEST_CASE("class representatives are subgroups with consistent class sizes") {
  auto G = groups::construct(groups::sym(5));
  auto c = subgroup_classes(G);
  for (const auto &x : c.classes) {
    CHECK(is_subgroup(x.representative, G));
    CHECK(x.representative.order() == x.order);
    CHECK(x.class_size * normalizer(G, x.representative).order() == G.order());
  }
  // Distinct classes are pairwise non-conjugate.
  for (std::size_t i = 0; i < c.classes.size(); ++i)
    for (std::size_t j = i + 1; j < c.classes.size(); ++j)
      if (c.classes[i].order == c.classes[j].order)
        CHECK_FALSE(is_conjugate_subgroup(G, c.classes[i].representative,
                                          c.classes[j].representative));
}

TEST_CASE("minimum order filter") {
  auto c = subgroup_classes(groups::construct(groups::alt(5)), 10);
  CHECK(order_profile(c) == std::multiset<BigInt>{10, 12, 60});
  auto s6 = subgroup_classes(groups::construct(groups::sym(6)), 120);
  // Two classes of S5 (intransitive and PGL2(5)), two of A5, A6 and S6.
  CHECK(order_profile(s6) == std::multiset<BigInt>{120, 120, 360, 720});
  auto a5 = subgroup_classes(groups::construct(groups::sym(6)), 60);
  CHECK(std::count_if(a5.classes.begin(), a5.classes.end(),
                      [](const SubgroupClass &x) { return x.order == 60; }) == 2);
}

TEST_CASE("naive and cyclic-extension strategies agree") {
  std::vector<groups::GroupSpec> specs{groups::sym(4),  groups::sym(5), groups::alt(6),
                                       groups::psl2(7), groups::pgl2(7),
                                       groups::wreath(groups::sym(3), 2),
                                       groups::metacyclic(7, 2, 3), groups::sp(4, 2)};
  for (const auto &s : specs) {
    auto G = groups::construct(s);
    INFO(s.to_string());
    EnumerationOptions a, b;
    a.strategy = Strategy::naive;
    b.strategy = Strategy::cyclic_extension;
    auto ca = subgroup_classes(G, 1, a), cb = subgroup_classes(G, 1, b);
    CHECK(ca.strategy == Strategy::naive);
    CHECK(cb.strategy == Strategy::cyclic_extension);
    CHECK(order_profile(ca) == order_profile(cb));
    CHECK(total_subgroups(ca) == total_subgroups(cb));
  }
}

TEST_CASE("soluble lifting agrees with cyclic extension") {
  std::vector<groups::GroupSpec> specs{groups::sym(4), groups::sp(2, 3),
                                       groups::wreath(groups::sym(3), 2),
                                       groups::wreath(groups::cyc(3), 3),
                                       groups::wreath(groups::sp(2, 3), 2),
                                       groups::wreath(groups::sym(3), 3),
                                       groups::metacyclic(13, 3, 3)};
  for (const auto &s : specs) {
    auto G = groups::construct(s);
    INFO(s.to_string());
    for (BigInt min : {BigInt(1), G.order() / 48}) {
      EnumerationOptions a, b;
      a.strategy = Strategy::cyclic_extension;
      b.strategy = Strategy::soluble_lift;
      auto ca = subgroup_classes(G, min, a), cb = subgroup_classes(G, min, b);
      CHECK(cb.strategy == Strategy::soluble_lift);
      CHECK(cb.certified);
      CHECK(order_profile(ca) == order_profile(cb));
      CHECK(total_subgroups(ca) == total_subgroups(cb));
      for (const auto &c : cb.classes)
        CHECK(is_subgroup(c.representative, G));
    }
  }
}

TEST_CASE("order divisibility filter") {
  auto G = groups::construct(groups::wreath(groups::sym(3), 3));
  EnumerationOptions a, b;
  a.strategy = Strategy::cyclic_extension;
  b.strategy = Strategy::soluble_lift;
  a.multiple_of = b.multiple_of = 27;
  auto ca = subgroup_classes(G, 1, a), cb = subgroup_classes(G, 1, b);
  CHECK_FALSE(ca.classes.empty());
  for (const auto &c : ca.classes)
    CHECK(c.order % 27 == 0);
  CHECK(order_profile(ca) == order_profile(cb));
  // Soluble lifting needs a soluble normal subgroup with a small quotient.
  EnumerationOptions c;
  c.strategy = Strategy::soluble_lift;
  CHECK_THROWS_AS(subgroup_classes(groups::construct(groups::alt(6)), 1, c), Error);
}

TEST_CASE("cyclic extension reaches perfect subgroups") {
  EnumerationOptions o;
  o.strategy = Strategy::cyclic_extension;
  auto c = subgroup_classes(groups::construct(groups::alt(7)), 1, o);
  CHECK(c.classes.size() == 40);
  auto big = subgroup_classes(groups::construct(groups::psl2(11)), 1, o);
  CHECK(big.classes.size() == 16);
}

TEST_CASE("limits are resource errors") {
  auto G = groups::construct(groups::sym(9));
  CHECK_THROWS_AS(subgroup_classes(G), Error);
  auto c = subgroup_classes(G, 2520);
  CHECK_FALSE(c.certified);
  CHECK(c.strategy == Strategy::bounded_index);
  auto prof = order_profile(c);
  CHECK(prof.count(362880) == 1);
  CHECK(prof.count(181440) == 1);
  CHECK(prof.count(40320) == 1);
}

TEST_CASE("intersections") {
  auto A6 = groups::construct(groups::alt(6));
  auto s1 = pointwise_stabilizer(A6, {0});
  auto s2 = pointwise_stabilizer(A6, {1});
  CHECK(intersection(s1, s2).order() == 12);
  auto P = groups::construct(groups::psl2(5));
  REQUIRE(P.degree() == 6);
  CHECK(intersection(s1, P).order() == 10);

  std::mt19937_64 rng(7);
  auto S6 = groups::construct(groups::sym(6));
  for (int t = 0; t < 60; ++t) {
    auto H = random_subgroup(S6, rng, 1 + t % 2);
    auto K = random_subgroup(S6, rng, 1 + (t / 2) % 2);
    auto eh = element_set(H), ek = element_set(K);
    std::size_t common = 0;
    for (const auto &x : eh)
      common += ek.count(x);
    auto I = intersection(H, K);
    CHECK(I.order() == common);
    CHECK(is_subgroup(I, H));
    CHECK(is_subgroup(I, K));
  }
}

TEST_CASE("product set size matches the intersection formula") {
  std::mt19937_64 rng(11);
  auto S5 = groups::construct(groups::sym(5));
  for (int t = 0; t < 30; ++t) {
    auto H = random_subgroup(S5, rng, 1);
    auto K = random_subgroup(S5, rng, 1 + t % 2);
    ElementSet hk;
    for (const auto &h : elements(H))
      for (const auto &k : elements(K))
        hk.insert((h * k).images());
    CHECK(BigInt(hk.size()) * intersection(H, K).order() == H.order() * K.order());
  }
}

TEST_CASE("normalizers and conjugacy against brute force") {
  std::mt19937_64 rng(3);
  auto S5 = groups::construct(groups::sym(5));
  auto all = elements(S5);
  for (int t = 0; t < 25; ++t) {
    auto H = random_subgroup(S5, rng, 1 + t % 2);
    auto eh = element_set(H);
    std::size_t n = 0;
    for (const auto &g : all) {
      bool ok = true;
      for (const auto &h : H.generators())
        if (!eh.count(h.conjugate(g).images()))
          ok = false;
      n += ok;
    }
    auto N = normalizer(S5, H);
    CHECK(N.order() == n);
    CHECK(is_subgroup(H, N));

    auto g = random_element(S5, rng);
    std::vector<Permutation> cg;
    for (const auto &h : H.generators())
      cg.push_back(h.conjugate(g));
    GroupHandle K(5, cg);
    auto x = is_conjugate_subgroup(S5, H, K);
    REQUIRE(x);
    std::vector<Permutation> hx;
    for (const auto &h : H.generators())
      hx.push_back(h.conjugate(*x));
    CHECK(element_set(GroupHandle(5, hx)) == element_set(K));
  }
  auto A5 = groups::construct(groups::alt(5));
  auto a = GroupHandle(5, {Permutation::from_cycles("(1,2)(3,4)", 5)});
  auto b = GroupHandle(5, {Permutation::from_cycles("(1,2)", 5)});
  CHECK_FALSE(is_conjugate_subgroup(S5, a, b));
  CHECK_THROWS_AS(is_conjugate_subgroup(A5, a, b), Error);
}

TEST_CASE("isomorphism tests") {
  auto A5 = groups::construct(groups::alt(5));
  auto L = groups::construct(groups::psl2(5));
  auto m = find_isomorphism(A5, L);
  REQUIRE(m);
  CHECK(graph_subgroup(5, 6, *m).order() == 60);
  CHECK(are_isomorphic(groups::construct(groups::sym(5)), groups::construct(groups::pgl2(5))));
  CHECK(are_isomorphic(groups::construct(groups::sym(4)), groups::construct(groups::pgl2(3))));
  auto C4 = groups::construct(groups::cyc(4));
  auto V4 = groups::construct(groups::direct_product({groups::cyc(2), groups::cyc(2)}));
  CHECK_FALSE(are_isomorphic(C4, V4));
  auto D8 = groups::construct(groups::dih(4));
  CHECK(D8.order() == 8);
  CHECK_FALSE(are_isomorphic(D8, quaternion()));
  CHECK_FALSE(are_isomorphic(groups::construct(groups::sym(5)),
                             groups::construct(groups::direct_product(
                                 {groups::alt(5), groups::cyc(2)}))));
  auto f = fingerprint(quaternion());
  CHECK(f.centre_order == 2);
  CHECK(f.abelianization_order == 4);
  CHECK(f.element_orders.at(4) == 6);
}

TEST_CASE("enumeration is complete against brute-force closure") {
  std::vector<groups::GroupSpec> specs{groups::sym(4), groups::alt(5), groups::sym(5),
                                       groups::sp(2, 3), groups::metacyclic(7, 2, 3),
                                       groups::dih(6)};
  for (const auto &spec : specs) {
    INFO(spec.to_string());
    auto G = groups::construct(spec);
    auto brute = all_subgroups_brute(G);
    for (auto strategy : {Strategy::naive, Strategy::cyclic_extension}) {
      EnumerationOptions o;
      o.strategy = strategy;
      auto c = subgroup_classes(G, 1, o);
      // Expand each class by conjugation and compare with the brute-force set.
      std::set<ElementSet> expanded;
      for (const auto &x : c.classes) {
        std::size_t before = expanded.size();
        for (const auto &g : elements(G)) {
          std::vector<Permutation> cg;
          for (const auto &h : x.representative.generators())
            cg.push_back(h.conjugate(g));
          expanded.insert(element_set(GroupHandle(G.degree(), cg)));
        }
        CHECK(expanded.size() - before == x.class_size);
      }
      CHECK(expanded == brute);
    }
  }
}

TEST_CASE("conjugacy examples") {
  auto A6 = groups::construct(groups::alt(6));
  auto natural = pointwise_stabilizer(A6, {5});
  auto L = groups::construct(groups::psl2(5));
  CHECK_FALSE(is_conjugate_subgroup(A6, natural, L));
  auto S4 = groups::construct(groups::sym(4));
  GroupHandle P1(4, {Permutation::from_cycles("(1,2,3,4)", 4), Permutation::from_cycles("(1,3)", 4)});
  GroupHandle P2(4, {Permutation::from_cycles("(1,3,2,4)", 4), Permutation::from_cycles("(1,2)", 4)});
  REQUIRE(P1.order() == 8);
  REQUIRE(P2.order() == 8);
  CHECK(is_conjugate_subgroup(S4, P1, P2));
  CHECK(is_conjugate_subgroup(S4, P1, P1));
}
