#include <doctest.h>

#include <set>

#include "cgt/error.hpp"
#include "cgt/permgroup.hpp"

using namespace cgt;
using namespace cgt::perm;

namespace {

GroupHandle symmetric(std::size_t n) {
  std::vector<Point> cyc(n);
  for (std::size_t i = 0; i < n; ++i)
    cyc[i] = static_cast<Point>((i + 1) % n);
  return GroupHandle(n, {Permutation::from_cycles("(1,2)", n), Permutation(cyc)});
}

// Closure by breadth-first multiplication; independent of the chain code.
std::set<std::vector<Point>> brute_closure(const std::vector<Permutation> &gens, std::size_t n) {
  std::set<std::vector<Point>> seen{Permutation(n).images()};
  std::vector<Permutation> queue{Permutation(n)};
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (const auto &g : gens) {
      Permutation x = queue[h] * g;
      if (seen.insert(x.images()).second)
        queue.push_back(x);
    }
  return seen;
}

} // namespace

TEST_CASE("cycle notation round trip") {
  auto p = Permutation::from_cycles("(1,3,5)(2,4)", 6);
  CHECK(p[0] == 2);
  CHECK(p[2] == 4);
  CHECK(p[4] == 0);
  CHECK(p.to_cycles() == "(1,3,5)(2,4)");
  CHECK(p.order() == 6);
  CHECK(Permutation::from_cycles("()", 4).is_identity());
  CHECK_THROWS_AS(Permutation::from_cycles("(1,2", 4), SyntaxError);
  CHECK_THROWS_AS(Permutation::from_cycles("(1,9)", 4), Error);
  CHECK_THROWS_AS(Permutation::from_cycles("(1,2)(2,3)", 4), Error);
}

TEST_CASE("composition applies the left factor first") {
  auto a = Permutation::from_cycles("(1,2)", 3);
  auto b = Permutation::from_cycles("(2,3)", 3);
  CHECK((a * b)[0] == 2);
  CHECK((a * b).inverse() == b * a);
  CHECK(a.conjugate(b) == Permutation::from_cycles("(1,3)", 3));
}

TEST_CASE("chain orders agree with brute-force closure") {
  for (std::size_t n = 2; n <= 7; ++n) {
    auto G = symmetric(n);
    BigInt f = 1;
    for (std::size_t i = 2; i <= n; ++i)
      f *= i;
    CHECK(G.order() == f);
  }
  std::vector<Permutation> gens{Permutation::from_cycles("(1,2,3)(4,5)", 8),
                                Permutation::from_cycles("(3,6,7,8)", 8)};
  GroupHandle G(8, gens);
  CHECK(G.order() == brute_closure(gens, 8).size());
  for (const auto &x : elements(G))
    CHECK(G.contains(x));
  CHECK(G.contains(Permutation::from_cycles("(1,2)", 8)) ==
              brute_closure(gens, 8).count(Permutation::from_cycles("(1,2)", 8).images()) > 0);
}

TEST_CASE("wrong known order is reported") {
  GroupHandle G(5, symmetric(5).generators());
  G.set_order_hint(60);
  CHECK_THROWS_AS(G.order(), Error);
}

TEST_CASE("stabilizers and transporters") {
  auto G = symmetric(6);
  auto S = pointwise_stabilizer(G, {0, 3});
  CHECK(S.order() == 24);
  for (const auto &g : S.generators()) {
    CHECK(g[0] == 0);
    CHECK(g[3] == 3);
  }
  auto t = transporter(G, {0, 1, 2}, {5, 3, 1});
  REQUIRE(t);
  CHECK((*t)[0] == 5);
  CHECK((*t)[1] == 3);
  CHECK((*t)[2] == 1);
  GroupHandle C(6, {Permutation::from_cycles("(1,2,3,4,5,6)", 6)});
  CHECK_FALSE(transporter(C, {0, 1}, {0, 2}));
  CHECK(transporter(C, {0, 1}, {3, 4}));
}

TEST_CASE("element index is a bijection") {
  auto G = symmetric(5);
  ElementIndex idx(G);
  REQUIRE(idx.size() == 120);
  std::set<std::vector<Point>> seen;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    CHECK(idx.rank(idx[i]) == i);
    seen.insert(idx[i].images());
  }
  CHECK(seen.size() == 120);
  CHECK(idx[idx.identity()].is_identity());
  CHECK(conjugacy_classes(idx, G).size() == 7);
}

TEST_CASE("coset action of S5 on cosets of S4 is natural") {
  auto G = symmetric(5);
  auto H = pointwise_stabilizer(G, {4});
  auto A = coset_action(G, H);
  CHECK(A.image.degree() == 5);
  CHECK(A.image.order() == 120);
  for (const auto &g : G.generators())
    CHECK(A.image_of(g).order() == g.order());
  // Cosets of a non-core-free subgroup: S4 / V4 acts as S3.
  auto S4 = symmetric(4);
  GroupHandle V(4, {Permutation::from_cycles("(1,2)(3,4)", 4), Permutation::from_cycles("(1,3)(2,4)", 4)});
  auto B = coset_action(S4, V);
  CHECK(B.image.degree() == 6);
  CHECK(B.image.order() == 6);
  CHECK(A.point_of(H.generators().front()) == 0);
}

TEST_CASE("blocks and primitivity") {
  CHECK(is_primitive(symmetric(6)).primitive);
  GroupHandle C(6, {Permutation::from_cycles("(1,2,3,4,5,6)", 6)});
  auto p = is_primitive(C);
  CHECK_FALSE(p.primitive);
  // Block actions of C6 are C2 or C3; both are primitive.
  CHECK((p.blocks.size() == 2 || p.blocks.size() == 3));
  CHECK(minimal_block(C, 3) == std::vector<Point>{0, 3});
  // D4 on 4 points: block {1,3}.
  GroupHandle D(4, {Permutation::from_cycles("(1,2,3,4)", 4), Permutation::from_cycles("(2,4)", 4)});
  auto q = is_primitive(D);
  CHECK_FALSE(q.primitive);
  CHECK(q.blocks.size() == 2);
}

TEST_CASE("derived series and radical") {
  auto S4 = symmetric(4);
  auto ds = derived_series(S4);
  REQUIRE(ds.size() == 4);
  CHECK(ds[1].order() == 12);
  CHECK(ds[2].order() == 4);
  CHECK(ds[3].order() == 1);
  CHECK(is_soluble(S4));
  auto S5 = symmetric(5);
  CHECK_FALSE(is_soluble(S5));
  CHECK(perfect_residual(S5).order() == 60);
  CHECK(soluble_radical(S5).order() == 1);
  CHECK(soluble_radical(S4).order() == 24);
  // S4 x S3 on 7 points: radical is all of it; S5 x S3 has radical S3.
  GroupHandle P(8, {Permutation::from_cycles("(1,2)", 8), Permutation::from_cycles("(1,2,3,4,5)", 8),
                    Permutation::from_cycles("(6,7)", 8), Permutation::from_cycles("(6,7,8)", 8)});
  CHECK(soluble_radical(P).order() == 6);
  CHECK(centre(P).order() == 1);
  GroupHandle Q(4, {Permutation::from_cycles("(1,2,3,4)", 4)});
  CHECK(centre(Q).order() == 4);
  CHECK(is_normal(S4, ds[2]));
  CHECK_FALSE(is_normal(S4, GroupHandle(4, {Permutation::from_cycles("(1,2)", 4)})));
}

TEST_CASE("chain construction respects a base prefix") {
  auto G = symmetric(7);
  auto c = chain_with_base(G, {6, 2, 4});
  auto b = c.base();
  REQUIRE(b.size() >= 3);
  CHECK(b[0] == 6);
  CHECK(b[1] == 2);
  CHECK(b[2] == 4);
  CHECK(c.order() == 5040);
  CHECK(c.tail(3).order() == 24);
}

TEST_CASE("random subgroups of S7 match closure") {
  std::mt19937_64 rng(7);
  auto S7 = symmetric(7);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Permutation> gens;
    std::size_t k = 1 + rng() % 3;
    for (std::size_t i = 0; i < k; ++i)
      gens.push_back(random_element(S7, rng));
    GroupHandle G(7, gens);
    auto brute = brute_closure(gens, 7);
    CHECK(G.order() == brute.size());
    auto x = random_element(S7, rng);
    CHECK(G.contains(x) == (brute.count(x.images()) > 0));
    for (Point v = 0; v < 7; ++v) {
      auto S = pointwise_stabilizer(G, {v});
      CHECK(S.order() * orbit(G, v).size() == G.order());
    }
  }
}

TEST_CASE("transporter existence matches orbit enumeration") {
  std::mt19937_64 rng(11);
  GroupHandle G(9, {Permutation::from_cycles("(1,2,3)(4,5,6)(7,8,9)", 9),
                    Permutation::from_cycles("(1,4,7)(2,5,8)(3,6,9)", 9),
                    Permutation::from_cycles("(2,3)(5,6)(8,9)", 9)});
  auto elts = elements(G);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Point> a{Point(rng() % 9), Point(rng() % 9)}, b{Point(rng() % 9), Point(rng() % 9)};
    bool expected = false;
    for (const auto &g : elts)
      expected = expected || (g[a[0]] == b[0] && g[a[1]] == b[1]);
    CHECK(transporter(G, a, b).has_value() == expected);
  }
}

TEST_CASE("Frobenius group of order 21") {
  GroupHandle F(7, {Permutation::from_cycles("(1,2,3,4,5,6,7)", 7),
                    Permutation::from_cycles("(2,3,5)(4,7,6)", 7)});
  CHECK(F.order() == 21);
  CHECK(pointwise_stabilizer(F, {0, 1}).order() == 1);
  // Arc 0 -> 1 lies in the orbital of differences {1,2,4}; its reverse does not.
  CHECK_FALSE(transporter(F, {0, 1}, {1, 0}));
  auto S3 = symmetric(3);
  CHECK(transporter(S3, {0, 1}, {1, 0}) == Permutation::from_cycles("(1,2)", 3));
}
