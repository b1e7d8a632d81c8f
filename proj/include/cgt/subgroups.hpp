/**
 * @file subgroups.hpp
 * @brief Conjugacy classes of subgroups of small groups, intersections,
 *        normalizers, subgroup conjugacy and isomorphism testing.
 */
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cgt/permgroup.hpp"

namespace cgt::subgroups {

using perm::GroupHandle;
using perm::Permutation;

struct SubgroupClass {
  GroupHandle representative;
  BigInt class_size;
  BigInt order;
};

enum class Strategy { automatic, naive, cyclic_extension, soluble_lift, bounded_index };
std::string strategy_name(Strategy s);

struct EnumerationOptions {
  Strategy strategy = Strategy::automatic;
  std::uint64_t naive_limit = 2000;
  std::uint64_t exhaustive_limit = 20000;
  std::uint64_t index_limit = 200;
  /// Lifting through a soluble normal subgroup with small quotient applies
  /// when |G| / min_order is at most this.
  std::uint64_t lift_index_limit = 5000;
  /// Largest number of complement classes tried for one subgroup and layer.
  std::uint64_t cohomology_limit = 1 << 16;
  /// Only classes whose order is a multiple of this are returned.
  BigInt multiple_of = 1;
};

struct SubgroupClasses {
  std::vector<SubgroupClass> classes;
  /// False for the best-effort bounded-index strategy.
  bool certified = true;
  Strategy strategy = Strategy::automatic;
};

/// One representative per conjugacy class of subgroups of order at least
/// min_order, sorted by order. Resource-limit when no strategy applies.
SubgroupClasses subgroup_classes(const GroupHandle &G, const BigInt &min_order = 1,
                                 const EnumerationOptions &opts = {});

/// H and K must have the same degree.
GroupHandle intersection(const GroupHandle &H, const GroupHandle &K);
GroupHandle normalizer(const GroupHandle &G, const GroupHandle &H,
                       std::uint64_t cap = perm::kDefaultIndexCap);
/// g with H^g = K, if any.
std::optional<Permutation> is_conjugate_subgroup(const GroupHandle &G, const GroupHandle &H,
                                                 const GroupHandle &K,
                                                 std::uint64_t cap = perm::kDefaultIndexCap);

struct Fingerprint {
  BigInt order;
  std::map<std::uint64_t, std::uint64_t> element_orders;
  std::size_t derived_length = 0;
  BigInt centre_order;
  BigInt abelianization_order;
  bool operator==(const Fingerprint &o) const = default;
};

Fingerprint fingerprint(const GroupHandle &G, std::uint64_t cap = 10000);

/// Generators of A paired with their images under an isomorphism A -> B.
using GeneratorMap = std::vector<std::pair<Permutation, Permutation>>;
std::optional<GeneratorMap> find_isomorphism(const GroupHandle &A, const GroupHandle &B,
                                             std::uint64_t cap = 10000);
bool are_isomorphic(const GroupHandle &A, const GroupHandle &B, std::uint64_t cap = 10000);

/// Subgroup of A x B generated by the pairs, on deg(A) + deg(B) points.
GroupHandle graph_subgroup(std::size_t degA, std::size_t degB, const GeneratorMap &pairs);

} // namespace cgt::subgroups
