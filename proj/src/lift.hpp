// Subgroup classes by lifting through a soluble normal subgroup.
#pragma once

#include <functional>
#include <optional>

#include "cgt/subgroups.hpp"

namespace cgt::subgroups::detail {

/// A soluble normal subgroup B of G and a homomorphism from G onto a small
/// permutation group with kernel B.
struct Radical {
  GroupHandle B;
  GroupHandle top;
  std::function<Permutation(const Permutation &)> to_top;
};

/// B = G for soluble G; the base group for a wreath product with a soluble
/// component. Nullopt otherwise.
std::optional<Radical> find_radical(const GroupHandle &G);

/// Classes of subgroups H with |H| >= min_order and multiple_of dividing |H|.
/// Subgroups of G/B are lifted through an elementary abelian series of B,
/// computing complements by cocycles at each layer and pruning by the order
/// conditions.
SubgroupClasses lift_classes(const GroupHandle &G, const Radical &R, const BigInt &min_order,
                             const BigInt &multiple_of, const EnumerationOptions &opts);

} // namespace cgt::subgroups::detail
