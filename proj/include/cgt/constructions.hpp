/**
 * @file constructions.hpp
 * @brief Specific groups and geometries used by the reproductions: the
 *        Frobenius group of order 21, PGammaL(2,q), the C17:4 families, the
 *        flag action of Sp(4,2) with a duality, a subspace-pair example in
 *        dimension 12 over GF(2), and (PSp(2,3) x PGO-(4,3)).2.
 */
#pragma once

#include <utility>
#include <vector>

#include "cgt/groups.hpp"
#include "cgt/linalg.hpp"
#include "cgt/permgroup.hpp"

namespace cgt::constructions {

using perm::GroupHandle;
using perm::Permutation;
using perm::Point;

/// x -> x + 1 and x -> 2x on Z/7.
GroupHandle frobenius21();

/// PGammaL(2,q) on the q + 1 points of the projective line.
GroupHandle pgaml2(unsigned q);

struct GroupAndSubgroup {
  GroupHandle G, H;
};

/// G = PGammaL(2,16) of order 16320 and H = C17:4, of index 240.
GroupAndSubgroup c17_4_in_pgaml2();

/// G = (C17:4) wr S2 and H the diagonal copy of C17:4, of index 136.
GroupAndSubgroup c17_4_diagonal_wreath();

/// The first element g of G, in a seeded random sequence, with g not in H and
/// g^-1 not in HgH. Precondition-violation when none is found in the given
/// number of tries.
Permutation antisymmetric_element(const GroupHandle &G, const GroupHandle &H,
                                  std::uint64_t seed, int tries = 2000);

/// Action on unordered pairs {a, b}; edges[i] is point i.
GroupHandle act_on_edges(const GroupHandle &G, const std::vector<std::pair<Point, Point>> &edges);

/// An automorphism of a bipartite graph exchanging its two parts, found by
/// backtracking. adj[v] lists the neighbours of v; the parts are [0, half)
/// and [half, 2 half).
std::optional<Permutation> part_swapping_automorphism(const std::vector<std::vector<Point>> &adj,
                                                      std::size_t half);

struct FlagGeometry {
  /// Points 0..14 are projective points of GF(2)^4, 15..29 the totally
  /// isotropic lines.
  GroupHandle points_and_lines;
  std::vector<std::vector<Point>> incidence;
  /// Sp(4,2) on points and lines.
  GroupHandle symplectic;
  /// Exchanges points and lines, preserving incidence.
  Permutation duality;
  /// <Sp(4,2), duality> on the 45 flags.
  GroupHandle flags;
  std::vector<std::pair<Point, Point>> flag_list;
};

FlagGeometry sp4_2_flags();

struct SubspacePairExample {
  groups::SubspaceOrbit orbit;
  linalg::Subspace W1, W2;
  Point w1 = 0, w2 = 0;
};

/// In the standard symplectic space of dimension 12 over GF(2),
/// W1 = <e1, f1, e4, f4, e5 + f3, f5 + e2, e6, f6> and
/// W2 = <e1, f1, e2, f2, e3, f3, e6, f6>, with Sp(8,2) acting on
/// <e2..e5, f2..f5> and trivially on the rest, restricted to the orbit of W1
/// (91392 subspaces).
SubspacePairExample c1_pair_example();

/// (PSp(2,3) x PGO-(4,3)).2 of order 17280 on the 40 projective points
/// u (x) w of GF(3)^2 (x) GF(3)^4 with w singular.
GroupHandle psp2_pgo4minus_ext();

} // namespace cgt::constructions
