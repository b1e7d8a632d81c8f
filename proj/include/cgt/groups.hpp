/**
 * @file groups.hpp
 * @brief Named group constructions as permutation groups, exact classical
 *        order formulas and matrix-group actions.
 */
#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "cgt/linalg.hpp"
#include "cgt/permgroup.hpp"

namespace cgt::groups {

using perm::GroupHandle;
using perm::Point;

enum class Kind { Sym, Alt, Cyc, Dih, Metacyclic, Sp, PSp, GOminus, PSL2, PGL2, DirectProduct, Wreath };

struct GroupSpec {
  Kind kind = Kind::Sym;
  std::vector<std::int64_t> params;
  std::vector<GroupSpec> args;

  /// Surface syntax, e.g. "wr(Sp(2,3),4)".
  std::string to_string() const;
  bool operator==(const GroupSpec &o) const = default;
};

GroupSpec sym(std::int64_t n);
GroupSpec alt(std::int64_t n);
GroupSpec cyc(std::int64_t n);
/// Dihedral group of order 2n acting on n points.
GroupSpec dih(std::int64_t n);
GroupSpec metacyclic(std::int64_t n, std::int64_t r, std::int64_t m);
GroupSpec sp(std::int64_t dim, std::int64_t q);
GroupSpec psp(std::int64_t dim, std::int64_t q);
GroupSpec go_minus(std::int64_t dim, std::int64_t q);
GroupSpec psl2(std::int64_t q);
GroupSpec pgl2(std::int64_t q);
GroupSpec direct_product(std::vector<GroupSpec> factors);
GroupSpec wreath(GroupSpec component, std::int64_t k);

struct ConstructOptions {
  std::uint64_t degree_cap = 10000;
};

/// Validates parameters; errors are invalid-argument, or resource-limit when
/// the degree would exceed the cap.
void validate(const GroupSpec &spec);
std::uint64_t spec_degree(const GroupSpec &spec);
/// Order from the closed formula of each constructor.
BigInt spec_order(const GroupSpec &spec);
GroupHandle construct(const GroupSpec &spec, const ConstructOptions &opts = {});

enum class Family {
  GL, SL, PSL, PGL, Sp, PSp, GU, SU, PSU, GO, SO, Omega, POmega, Sz, G2, F4, Ree, Alt, Sym
};

/// Orthogonal type: plus, minus, or odd dimension.
enum class Sign { none, plus, minus, odd };

struct ClassicalOrder {
  Family family;
  Sign sign = Sign::none;
  unsigned n = 0;
  BigInt q;
  BigInt value;
};

/// n is the matrix dimension for the classical families (so Sp uses 2m) and
/// the degree for Alt and Sym; it is ignored for Sz, G2, F4 and Ree.
ClassicalOrder classical_order(Family family, Sign sign, unsigned n, const BigInt &q);
/// Accepts names such as "PSL", "Sp", "GO-", "POmega+", "Omega", "Sz", "2G2", "A".
ClassicalOrder classical_order(const std::string &family, unsigned n, const BigInt &q);
std::string family_name(Family family, Sign sign);

struct BaseAndTop {
  GroupHandle base;
  std::vector<std::vector<Point>> blocks;
};

BaseAndTop base_and_top(const GroupHandle &W);

/// Permutation action on the nonzero vectors; vector with code c is point c - 1.
GroupHandle act_on_vectors(const linalg::Field &field, std::size_t dim,
                           const std::vector<linalg::FqMatrix> &gens, std::uint64_t cap = 10000);

/// Normalized projective points in increasing code order.
std::vector<linalg::Vec> projective_points(const linalg::Field &field, std::size_t dim);
GroupHandle act_on_projective(const linalg::Field &field, std::size_t dim,
                              const std::vector<linalg::FqMatrix> &gens,
                              std::uint64_t cap = 10000);

/// Projective image of the Kronecker products g (x) 1 and 1 (x) h.
GroupHandle tensor_embed(const linalg::Field &field, std::size_t a,
                         const std::vector<linalg::FqMatrix> &A, std::size_t b,
                         const std::vector<linalg::FqMatrix> &B, std::uint64_t cap = 10000);

/// Action of a matrix group on the orbit of a subspace.
struct SubspaceOrbit {
  GroupHandle group;
  std::vector<linalg::Subspace> points;
  std::unordered_map<std::string, Point> index;
  Point index_of(const linalg::Subspace &w) const;
};

std::string subspace_key(const linalg::Subspace &w);
SubspaceOrbit subspace_orbit(const std::vector<linalg::FqMatrix> &gens, const linalg::Subspace &seed,
                             std::uint64_t cap = 1000000);

} // namespace cgt::groups
