/**
 * @file digraph.hpp
 * @brief Coset digraphs Cos(G, H, g), s-arc-transitivity by the stabilizer
 *        factorization criterion and by direct orbit counting, orbital
 *        self-pairedness and the valency p-part test.
 */
#pragma once

#include <optional>
#include <vector>

#include "cgt/permgroup.hpp"

namespace cgt::digraph {

using perm::GroupHandle;
using perm::Permutation;
using perm::Point;

/// Vertices are the right cosets of H, vertex 0 is H itself and Hx -> Hy
/// exactly when y x^-1 lies in HgH. The base arc is H -> Hg.
struct CosetDigraph {
  GroupHandle G, H;
  Permutation g;
  perm::ActionMap action;
  std::vector<std::vector<Point>> out;

  /// The vertex Hg.
  Point head = 0;

  std::size_t vertices() const { return out.size(); }
  /// The permutation group induced on the vertices.
  const GroupHandle &group() const { return action.image; }
};

/// Errors: loop when g lies in H, not-antisymmetric when g^-1 lies in HgH.
CosetDigraph coset_digraph(const GroupHandle &G, const GroupHandle &H, const Permutation &g,
                           std::uint64_t cap = perm::kDefaultIndexCap);

/// |H : H cap H^g|, the out-degree of every vertex.
std::uint64_t valency(const CosetDigraph &D);

/// The digraph is connected exactly when <H, g> = G.
bool is_connected(const CosetDigraph &D);

/// The base s-arc v_0 -> ... -> v_s with v_i = H g^i, and the stabilizers
/// G_{v_a..v_b} in the induced group.
struct ArcChain {
  std::vector<Point> points;
  /// stabilizer(a, b) fixes v_a, ..., v_b pointwise.
  GroupHandle stabilizer(std::size_t a, std::size_t b) const;

  GroupHandle group;
};

ArcChain base_arc_chain(const CosetDigraph &D, std::size_t s);

/// Largest s <= cap with G_{v_1..v_i} = G_{v_0..v_i} G_{v_1..v_{i+1}} for all
/// 1 <= i <= s - 1.
std::size_t max_s_by_criterion(const CosetDigraph &D, std::size_t cap);

/// Largest s <= cap for which the orbit of the base s-arc, found by closing
/// under the generators, is the set of all s-arcs, counted by depth-first
/// enumeration. Resource-limit when more than arc_cap s-arcs are needed.
std::size_t max_s_by_orbits(const CosetDigraph &D, std::size_t cap,
                            std::uint64_t arc_cap = 1000000);

struct SelfPairing {
  bool self_paired = false;
  /// Element swapping u and v.
  std::optional<Permutation> witness;
};

SelfPairing is_self_paired(const GroupHandle &G, Point u, Point v);

struct Orbital {
  /// The orbital of (0, rep).
  Point rep = 0;
  /// Length of the suborbit of G_0 containing rep.
  std::size_t length = 0;
  bool self_paired = false;
  /// Index of the paired orbital in the scan.
  std::size_t paired = 0;
  std::optional<Permutation> witness;
};

/// Non-diagonal orbitals of a transitive group, by suborbits of G_0.
std::vector<Orbital> self_paired_scan(const GroupHandle &G, std::uint64_t cap = 100000);

struct PPartVerdict {
  BigInt prime;
  BigInt stabilizer_part;
  BigInt valency_part;
  unsigned s = 0;
  /// |G_v|_p >= (gamma_p)^s.
  bool pass = false;
};

/// One verdict per prime dividing |G_v|. Any failure rules out (G, s)-arc
/// transitivity for a digraph of valency gamma with vertex stabilizer G_v.
std::vector<PPartVerdict> valency_p_part_check(const BigInt &stabilizer_order,
                                               const BigInt &valency, unsigned s);
std::vector<PPartVerdict> valency_p_part_check(const CosetDigraph &D, unsigned s);

/// Smallest d with stabilizer_order^s dividing outer * d^s. With s = 3 this
/// is the divisibility forced on |X_uv| when (|X_v| / |X_uv|)^3 divides
/// |L_v| * outer and |L_v| divides |X_v|.
BigInt forced_divisor(const BigInt &stabilizer_order, const BigInt &outer, unsigned s);

/// Nontrivial proper normal subgroups of H normalised by g. For a connected
/// arc-transitive digraph this list is empty. Resource-limit above |H| = cap.
std::vector<GroupHandle> normalised_normal_subgroups(const CosetDigraph &D,
                                                     std::uint64_t cap = 2000);

} // namespace cgt::digraph
