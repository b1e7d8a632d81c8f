#include <doctest.h>

#include "cgt/constructions.hpp"
#include "cgt/digraph.hpp"
#include "cgt/factor.hpp"
#include "cgt/subgroups.hpp"

using namespace cgt;
using namespace cgt::perm;
using namespace cgt::constructions;

TEST_CASE("small constructions have the expected orders") {
  CHECK(frobenius21().order() == 21);
  CHECK(pgaml2(4).order() == 120);
  CHECK(pgaml2(8).order() == 1512);
  CHECK(pgaml2(9).order() == 1440);
  auto G = psp2_pgo4minus_ext();
  CHECK(G.degree() == 40);
  CHECK(G.order() == 17280);
  CHECK(is_transitive(G));
}

TEST_CASE("C17:4 has a unique subgroup of order 17 and no homogeneous factorisation") {
  auto C = groups::construct(groups::metacyclic(17, 4, 4));
  REQUIRE(C.order() == 68);
  auto cls = subgroups::subgroup_classes(C);
  int seventeen = 0;
  for (const auto &c : cls.classes)
    if (c.order == 17) {
      ++seventeen;
      CHECK(c.class_size == 1);
    }
  CHECK(seventeen == 1);
  auto rep = factor::search_homogeneous(C);
  CHECK(rep.certified);
  CHECK(rep.witnesses.empty());
}

TEST_CASE("arc-transitive digraphs with stabilizer C17:4 have s at most 1") {
  for (auto [G, H] : {c17_4_in_pgaml2(), c17_4_diagonal_wreath()}) {
    CHECK(H.order() == 68);
    for (std::uint64_t seed : {1, 2, 3}) {
      auto g = antisymmetric_element(G, H, seed);
      auto D = digraph::coset_digraph(G, H, g);
      CHECK(BigInt(D.vertices()) * 68 == G.order());
      CHECK(digraph::max_s_by_criterion(D, 4) <= 1);
      if (digraph::is_connected(D))
        CHECK(digraph::normalised_normal_subgroups(D).empty());
    }
  }
}

TEST_CASE("Sp(4,2) flags under a duality") {
  auto fg = sp4_2_flags();
  CHECK(fg.symplectic.order() == 720);
  CHECK(fg.points_and_lines.order() == 1440);
  CHECK(fg.flag_list.size() == 45);
  CHECK(fg.flags.order() == 1440);
  // The duality preserves incidence and swaps the two parts.
  for (Point v = 0; v < 30; ++v) {
    CHECK((v < 15) != (fg.duality[v] < 15));
    for (Point w : fg.incidence[v]) {
      const auto &nb = fg.incidence[fg.duality[v]];
      CHECK(std::find(nb.begin(), nb.end(), fg.duality[w]) != nb.end());
    }
  }
  for (const auto &o : digraph::self_paired_scan(fg.flags))
    CHECK(o.self_paired);
  // Sp(4,2) alone is not transitive on points and lines.
  CHECK_FALSE(is_transitive(fg.symplectic));
}

TEST_CASE("subspace pair certificate in dimension 12") {
  auto ex = c1_pair_example();
  CHECK(ex.orbit.points.size() == 91392);
  auto p = linalg::pair_profile(ex.W1, ex.W2);
  CHECK(p.dim1 == 8);
  CHECK(p.dim2 == 8);
  CHECK(p.w1_meet_w2perp.dim == 2);
  CHECK(p.w1_meet_w2perp.rank == 2);
  CHECK(p.w2_meet_w1perp.dim == 2);
  CHECK(p.w2_meet_w1perp.rank == 0);
  // The profile of (W2, W1) differs, so no isometry swaps the pair.
  CHECK_FALSE(linalg::pair_profile(ex.W2, ex.W1) == p);
  CHECK_FALSE(digraph::is_self_paired(ex.orbit.group, ex.w1, ex.w2).self_paired);
}
