#include <doctest.h>

#include <random>

#include "cgt/constructions.hpp"
#include "cgt/digraph.hpp"
#include "cgt/error.hpp"
#include "cgt/groups.hpp"
#include "cgt/subgroups.hpp"

using namespace cgt;
using namespace cgt::perm;
using namespace cgt::digraph;

namespace {

GroupHandle build(const groups::GroupSpec &s) { return groups::construct(s); }

struct Frob {
  GroupHandle G, H;
  Permutation g;
};

// F21 with H the stabilizer of 0 and g the translation x -> x + 1.
Frob frobenius() {
  Frob f;
  f.G = constructions::frobenius21();
  f.H = pointwise_stabilizer(f.G, {0});
  f.g = f.G.generators()[0];
  return f;
}

bool has_arc(const CosetDigraph &D, Point x, Point y) {
  return std::find(D.out[x].begin(), D.out[x].end(), y) != D.out[x].end();
}

} // namespace

TEST_CASE("directed 5-cycle") {
  auto C5 = build(groups::cyc(5));
  auto D = coset_digraph(C5, trivial_group(5), C5.generators()[0]);
  CHECK(D.vertices() == 5);
  CHECK(valency(D) == 1);
  CHECK(max_s_by_criterion(D, 10) == 10);
  CHECK(max_s_by_orbits(D, 4) == 4);
  for (const auto &v : valency_p_part_check(D, 7))
    CHECK(v.pass);
  CHECK(is_connected(D));
}

TEST_CASE("Frobenius 21 tournament") {
  auto f = frobenius();
  auto D = coset_digraph(f.G, f.H, f.g);
  CHECK(D.vertices() == 7);
  CHECK(valency(D) == 3);
  CHECK(max_s_by_criterion(D, 5) == 1);
  CHECK(max_s_by_orbits(D, 3) == 1);
  // A tournament: exactly one direction between any two vertices.
  for (Point x = 0; x < 7; ++x)
    for (Point y = 0; y < 7; ++y)
      if (x != y)
        CHECK(has_arc(D, x, y) != has_arc(D, y, x));
  // The out-neighbours of 0 form the residue class {1, 2, 4} in the
  // natural labelling.
  auto nat = f.G;
  std::set<Point> res;
  for (Point y : D.out[0]) {
    auto rep = D.action.reps[y];
    res.insert(rep[0]);
  }
  CHECK(res == std::set<Point>{1, 2, 4});
  CHECK_FALSE(is_self_paired(nat, 0, 1).self_paired);
}

TEST_CASE("coset digraph errors") {
  auto S3 = build(groups::sym(3));
  auto t = Permutation::from_cycles("(1,2)", 3);
  try {
    coset_digraph(S3, trivial_group(3), t);
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::not_antisymmetric);
  }
  auto f = frobenius();
  try {
    coset_digraph(f.G, f.H, f.H.generators()[0]);
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::loop);
  }
  CHECK_THROWS_AS(coset_digraph(f.G, f.G, f.g), Error);
}

TEST_CASE("self-paired orbitals") {
  auto C3 = build(groups::cyc(3));
  CHECK_FALSE(is_self_paired(C3, 0, 1).self_paired);

  auto scan = self_paired_scan(constructions::frobenius21());
  REQUIRE(scan.size() == 2);
  CHECK_FALSE(scan[0].self_paired);
  CHECK_FALSE(scan[1].self_paired);
  CHECK(scan[0].paired == 1);
  CHECK(scan[1].paired == 0);

  for (int n = 3; n <= 6; ++n) {
    auto S = self_paired_scan(build(groups::sym(n)));
    REQUIRE(S.size() == 1);
    CHECK(S[0].self_paired);
    CHECK(S[0].length == std::size_t(n - 1));
    REQUIRE(S[0].witness);
    CHECK((*S[0].witness)[0] == S[0].rep);
    CHECK((*S[0].witness)[S[0].rep] == 0);
  }
  CHECK_THROWS_AS(self_paired_scan(GroupHandle(4, {Permutation::from_cycles("(1,2)", 4)})),
                  Error);
}

TEST_CASE("valency p-part check") {
  auto v = valency_p_part_check(24, 6, 3);
  REQUIRE(v.size() == 2);
  CHECK(v[0].prime == 2);
  CHECK(v[0].pass);
  CHECK(v[1].prime == 3);
  CHECK_FALSE(v[1].pass);
  CHECK_THROWS_AS(valency_p_part_check(24, 6, 0), Error);
  // |L_v| = 2^21 3^8 5 and |G_v| dividing 2^22 3^8 5 force 2^14 3^6 5 to
  // divide |X_uv|.
  BigInt Lv = numth::ipow(2, 21) * numth::ipow(3, 8) * 5;
  CHECK(forced_divisor(Lv, 2 * Lv, 3) == numth::ipow(2, 14) * numth::ipow(3, 6) * 5);
  CHECK(forced_divisor(Lv, Lv, 1) == 1);
}

TEST_CASE("digraph invariants on random coset digraphs") {
  std::mt19937_64 rng(2024);
  const std::vector<groups::GroupSpec> specs = {
      groups::sym(4), groups::sym(5), groups::alt(5), groups::psl2(7), groups::dih(7),
      groups::metacyclic(13, 3, 3), groups::pgl2(5), groups::alt(6)};
  int built = 0;
  for (int t = 0; t < 200 && built < 60; ++t) {
    auto G = build(specs[t % specs.size()]);
    auto H = subgroup(G, {random_element(G, rng)});
    if (H.order() == G.order() || G.order() / H.order() > 60)
      continue;
    auto g = random_element(G, rng);
    if (H.contains(g))
      continue;
    CosetDigraph D;
    try {
      D = coset_digraph(G, H, g);
    } catch (const Error &e) {
      CHECK(e.kind() == ErrorKind::not_antisymmetric);
      continue;
    }
    ++built;
    const auto gamma = valency(D);
    CHECK(H.order() % gamma == 0);
    CHECK(BigInt(gamma) * subgroups::intersection(H, conjugate(H, g)).order() == H.order());
    for (Point x = 0; x < D.vertices(); ++x) {
      CHECK(D.out[x].size() == gamma);
      for (Point y : D.out[x])
        CHECK_FALSE(has_arc(D, y, x));
    }
    CHECK(max_s_by_criterion(D, 4) == max_s_by_orbits(D, 4));
  }
  CHECK(built >= 50);
}
