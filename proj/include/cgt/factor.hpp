#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cgt/permgroup.hpp"
#include "cgt/subgroups.hpp"

namespace cgt::factor {

using perm::GroupHandle;
using perm::Permutation;

/// G = HK, decided by |G| * |H cap K| = |H| * |K|.
bool is_factorisation(const GroupHandle &G, const GroupHandle &H, const GroupHandle &K);

/// G = HK with H and K proper and isomorphic, and conjugate in G when asked.
bool is_homogeneous_pair(const GroupHandle &G, const GroupHandle &H, const GroupHandle &K,
                         bool require_conjugate);

struct SearchOptions {
  bool require_conjugate = false;
  /// Extra constraint: |H| must be divisible by each of these.
  std::vector<BigInt> order_divisible_by;
  /// Defaults to the p-part bound prod p^ceil(e_p / 2) of |G|.
  std::optional<BigInt> min_order;
  subgroups::EnumerationOptions enumeration;
};

struct Witness {
  GroupHandle H, K;
  BigInt order;
  BigInt intersection_order;
};

/// Candidate counts after each pipeline stage.
struct StageCounts {
  std::size_t p_part = 0;
  std::size_t equal_order = 0;
  std::size_t product = 0;
  std::size_t isomorphic = 0;
  /// Product pairs too large for the element-based isomorphism test whose
  /// invariants agree and which are not conjugate. These leave the report
  /// uncertified.
  std::size_t undecided = 0;
};

struct FactorisationReport {
  std::string group;
  BigInt group_order;
  BigInt min_order;
  std::size_t classes = 0;
  subgroups::Strategy strategy = subgroups::Strategy::automatic;
  StageCounts counts;
  std::vector<Witness> witnesses;
  bool certified = true;
  bool require_conjugate = false;
  std::vector<BigInt> order_divisible_by;
};

/// All homogeneous factorizations G = HK up to conjugacy of the unordered
/// pair of classes. Pairs are filtered by the p-part bound, equal order,
/// the product formula and finally isomorphism.
FactorisationReport search_homogeneous(const GroupHandle &G, const SearchOptions &opts = {});

struct WreathProjections {
  /// Image in the top group acting on the k blocks.
  GroupHandle pi_image;
  /// phi_i(H cap M) for each component i, on the component points.
  std::vector<GroupHandle> phi_images;
  /// H cap M on the full set of points.
  GroupHandle base_part;
};

/// W must carry wreath provenance and contain H.
WreathProjections wreath_projections(const GroupHandle &W, const GroupHandle &H);

// ---------------------------------------------------------------------------
// Arithmetic audit of factorization tables

/// Order of a group written as NAME(args): PSL(2,13), POmega-(12,3),
/// Omega(7,3), Sp(6,2), A(9), G2(3), F4(3), 2G2'(3), Sz(8).
BigInt named_group_order(const std::string &name);

/// A group name or L (the socle), followed by any number of *k or /k.
BigInt order_expression(const std::string &expr, const BigInt &socle_order);

enum class AuditKind {
  /// Symplectic socle: ppd prime divides the A side and avoids the B side.
  symplectic,
  /// Overgroup pairs whose Y side meets the ppd prime.
  exceptions,
  /// Orthogonal socle, odd q.
  orthogonal,
  /// POmega+(8,q) socle.
  omega8plus,
};

struct TableRow {
  int table = 0;
  std::string row;
  AuditKind kind = AuditKind::symplectic;
  std::string printed;
  std::string instantiation;
  std::string socle;
  unsigned p = 0;
  unsigned f = 1;
  /// The ppd prime r ranges over ppd(p, ppd_exponent).
  unsigned ppd_exponent = 0;
  /// Orthogonal dimension m, for the rank-dependent checks.
  unsigned m = 0;
  /// Second ppd exponent (3f for the plus type in dimension 6).
  std::optional<unsigned> s_exponent;
  /// Alternatives for the insoluble composition factors of each side.
  std::vector<std::vector<std::string>> A, B;
  /// Overgroups X cap L and Y cap L as order expressions.
  std::optional<std::string> X, Y;
  /// Rows where A and B may share a composition factor.
  bool allow_common = false;
  std::string note;
};

struct AuditCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct AuditVerdict {
  TableRow row;
  BigInt socle_order;
  std::vector<BigInt> ppd;
  std::vector<AuditCheck> checks;
  bool pass = false;
};

AuditVerdict audit_table_row(const TableRow &row);

std::vector<TableRow> load_table_rows(const std::string &path);
/// The shipped table data file.
std::string default_table_path();

} // namespace cgt::factor
