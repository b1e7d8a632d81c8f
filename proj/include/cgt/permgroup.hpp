/**
 * @file permgroup.hpp
 * @brief Permutations, stabilizer chains and the basic algorithms on
 *        permutation groups.
 *
 * Points are 0-based. Groups act on the right: x^(gh) = (x^g)^h, so
 * g * h applies g first.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cgt/numth.hpp"

namespace cgt::perm {

using Point = std::uint32_t;

class Permutation {
public:
  Permutation() = default;
  explicit Permutation(std::size_t degree);
  explicit Permutation(std::vector<Point> images);

  /// Parse disjoint-cycle notation with 1-based points, e.g. "(1,2,3)(4,5)".
  static Permutation from_cycles(const std::string &text, std::size_t degree);
  static Permutation from_cycle_list(const std::vector<std::vector<Point>> &cycles,
                                     std::size_t degree);

  std::size_t degree() const { return img_.size(); }
  Point operator[](Point x) const { return img_[x]; }
  const std::vector<Point> &images() const { return img_; }

  Permutation operator*(const Permutation &o) const;
  Permutation &operator*=(const Permutation &o);
  Permutation inverse() const;
  Permutation pow(long long e) const;
  /// g^h = h^-1 g h.
  Permutation conjugate(const Permutation &h) const;
  bool is_identity() const;
  BigInt order() const;
  std::uint64_t small_order() const;

  std::string to_cycles() const;

  bool operator==(const Permutation &o) const { return img_ == o.img_; }
  bool operator!=(const Permutation &o) const { return img_ != o.img_; }
  bool operator<(const Permutation &o) const { return img_ < o.img_; }

private:
  std::vector<Point> img_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation &p) const;
};

constexpr std::uint64_t kDefaultSeed = 0x243F6A8885A308D3ULL;

/// Seed used by every randomized chain construction in this process.
std::uint64_t default_seed();
void set_default_seed(std::uint64_t seed);

struct ChainLevel {
  Point base = 0;
  std::vector<std::uint32_t> gens;
  std::vector<Point> orbit;
  std::vector<std::int32_t> tree;
  std::vector<std::uint32_t> pos;
  std::vector<Permutation> uinv;
};

class StabChain {
public:
  explicit StabChain(std::size_t degree = 0) : degree_(degree) {}

  std::size_t degree() const { return degree_; }
  std::size_t depth() const { return levels_.size(); }
  const ChainLevel &level(std::size_t i) const { return levels_[i]; }
  const std::vector<Permutation> &strong() const { return strong_; }
  std::vector<Point> base() const;
  BigInt order() const;

  bool in_orbit(std::size_t level, Point p) const;
  /// u with base(level)^u = p.
  Permutation transversal(std::size_t level, Point p) const;
  /// g <- g * u_p^-1.
  void strip(std::size_t level, Point p, Permutation &g) const;

  struct SiftResult {
    Permutation residue;
    std::size_t depth;
  };
  SiftResult sift(Permutation g, std::size_t from = 0) const;
  bool contains(const Permutation &g) const;
  /// Strong generators fixing the first k base points.
  std::vector<Permutation> level_generators(std::size_t k) const;
  /// The chain of the stabilizer of the first k base points.
  StabChain tail(std::size_t k) const;

private:
  friend class ChainBuilder;
  void rebuild_orbit(std::size_t i);
  void cache_level(std::size_t i);
  void cache_transversals(std::size_t from);

  std::size_t degree_;
  std::vector<Permutation> strong_, strong_inv_;
  std::vector<ChainLevel> levels_;
};

struct ChainOptions {
  std::optional<BigInt> known_order;
  std::vector<Point> base_prefix;
  std::uint64_t seed = 0;
};

/// Randomized Schreier-Sims from a fixed seed, followed by sifting every
/// Schreier generator. With a known order the random phase stops once the
/// order is reached, and the verification pass is skipped when it would be
/// expensive; a mismatch with the known order is an invalid-argument error.
StabChain build_chain(std::size_t degree, const std::vector<Permutation> &gens,
                      const ChainOptions &opts = {});

struct WreathInfo {
  std::size_t component_degree = 0;
  std::size_t k = 0;
  std::vector<Permutation> component_generators;
  BigInt component_order;
};

class GroupHandle {
public:
  GroupHandle() : GroupHandle(0, {}) {}
  GroupHandle(std::size_t degree, std::vector<Permutation> gens);

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation> &generators() const { return gens_; }
  const StabChain &chain() const;
  BigInt order() const { return chain().order(); }
  bool contains(const Permutation &g) const { return chain().contains(g); }
  bool is_trivial() const { return order() == 1; }

  /// Exact order of the group when known in advance.
  void set_order_hint(const BigInt &order);
  const std::optional<BigInt> &order_hint() const { return hint_; }
  void adopt_chain(StabChain chain);

  const std::shared_ptr<const WreathInfo> &wreath() const { return wreath_; }
  void set_wreath(std::shared_ptr<const WreathInfo> w) { wreath_ = std::move(w); }

  std::string to_string() const;

private:
  std::size_t degree_;
  std::vector<Permutation> gens_;
  std::optional<BigInt> hint_;
  std::shared_ptr<const WreathInfo> wreath_;
  struct Lazy {
    std::mutex mu;
    std::shared_ptr<const StabChain> chain;
  };
  std::shared_ptr<Lazy> lazy_;
};

GroupHandle trivial_group(std::size_t degree);
GroupHandle subgroup(const GroupHandle &G, std::vector<Permutation> gens);
bool is_subgroup(const GroupHandle &H, const GroupHandle &G);
bool same_group(const GroupHandle &A, const GroupHandle &B);
GroupHandle conjugate(const GroupHandle &H, const Permutation &g);

std::vector<Point> orbit(const GroupHandle &G, Point p);
std::vector<std::vector<Point>> orbits(const GroupHandle &G);
bool is_transitive(const GroupHandle &G);

/// A chain of G whose base starts with the given points.
StabChain chain_with_base(const GroupHandle &G, const std::vector<Point> &prefix);
GroupHandle pointwise_stabilizer(const GroupHandle &G, const std::vector<Point> &points);
std::optional<Permutation> transporter(const GroupHandle &G, const std::vector<Point> &a,
                                       const std::vector<Point> &b);

Permutation random_element(const GroupHandle &G, std::mt19937_64 &rng);

/// All elements, in chain order; resource-limit when the order exceeds cap.
std::vector<Permutation> elements(const GroupHandle &G, std::uint64_t cap = 1000000);

/// Bijection between elements of a small group and 0..|G|-1.
class ElementIndex {
public:
  explicit ElementIndex(const GroupHandle &G, std::uint64_t cap = 1000000);
  std::size_t size() const { return elems_.size(); }
  const Permutation &operator[](std::size_t i) const { return elems_[i]; }
  const std::vector<Permutation> &all() const { return elems_; }
  std::size_t rank(const Permutation &g) const;
  /// Rank of the element with the given images of the chain base; assumes
  /// such an element exists. The buffer is overwritten.
  std::size_t rank_of_base_images(std::vector<Point> &images) const;
  const std::vector<Point> &base() const { return base_; }
  std::size_t identity() const { return id_; }
  const StabChain &chain() const { return chain_; }

private:
  StabChain chain_;
  std::vector<Permutation> elems_;
  std::vector<std::size_t> stride_;
  std::vector<Point> base_;
  std::size_t id_ = 0;
};

struct ActionMap {
  GroupHandle source;
  GroupHandle image;
  /// Point i is the coset H * reps[i]; point 0 is H itself.
  std::vector<Permutation> reps;
  /// Image of an arbitrary element of the source.
  Permutation image_of(const Permutation &g) const;
  /// The point (coset) containing g.
  Point point_of(const Permutation &g) const;

  struct Canon;
  std::shared_ptr<const Canon> canon;
};

constexpr std::uint64_t kDefaultIndexCap = 1000000;

ActionMap coset_action(const GroupHandle &G, const GroupHandle &H,
                       std::uint64_t cap = kDefaultIndexCap);

/// Action of G on the blocks of a G-invariant partition.
GroupHandle action_on_blocks(const GroupHandle &G, const std::vector<std::vector<Point>> &blocks);
/// Setwise stabilizer of blocks[which]; blocks must partition the points
/// (singletons allowed) and be G-invariant.
GroupHandle block_stabilizer(const GroupHandle &G, const std::vector<std::vector<Point>> &blocks,
                             std::size_t which);
/// Kernel of the action on a G-invariant partition.
GroupHandle block_kernel(const GroupHandle &G, const std::vector<std::vector<Point>> &blocks);
/// Action of G on one of its orbits (points relabelled in the given order).
GroupHandle restrict_to_orbit(const GroupHandle &G, const std::vector<Point> &orbit_points);

struct Primitivity {
  bool primitive = true;
  std::vector<std::vector<Point>> blocks;
};

/// Smallest block containing 0 and x for a transitive group.
std::vector<Point> minimal_block(const GroupHandle &G, Point x);
/// When imprimitive, the witness is a block system whose block action is
/// primitive (the coarsest refinement reachable from a minimal block).
Primitivity is_primitive(const GroupHandle &G);

GroupHandle normal_closure(const GroupHandle &G, const std::vector<Permutation> &gens);
GroupHandle derived_subgroup(const GroupHandle &G);
std::vector<GroupHandle> derived_series(const GroupHandle &G);
GroupHandle perfect_residual(const GroupHandle &G);
bool is_soluble(const GroupHandle &G);
bool is_normal(const GroupHandle &G, const GroupHandle &N);
GroupHandle soluble_radical(const GroupHandle &G, std::uint64_t cap = 1000000);
GroupHandle centre(const GroupHandle &G, std::uint64_t cap = 1000000);

/// Orbits of G on its own elements under conjugation, as index classes.
std::vector<std::vector<std::size_t>> conjugacy_classes(const ElementIndex &idx,
                                                        const GroupHandle &G);

} // namespace cgt::perm
