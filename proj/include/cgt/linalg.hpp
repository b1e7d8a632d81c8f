/**
 * @file linalg.hpp
 * @brief Finite fields, matrices over GF(p^f), subspaces in reduced
 *        row-echelon form and bilinear-form geometry.
 *
 * Vectors are rows and matrices act on the right: v -> vM.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace cgt::linalg {

using Elem = std::uint32_t;
using Vec = std::vector<Elem>;

class Field {
public:
  Field(unsigned p, unsigned f = 1);
  static Field of_order(unsigned q);

  unsigned p() const { return t_->p; }
  unsigned f() const { return t_->f; }
  unsigned q() const { return t_->q; }
  /// Coefficients c_0..c_{f-1} of the monic modulus x^f + sum c_i x^i.
  const std::vector<unsigned> &modulus() const { return t_->modulus; }
  Elem primitive() const { return t_->exp[1 % (t_->q - 1)]; }

  Elem add(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem from_int(long long v) const;
  bool is_square(Elem a) const;

  bool operator==(const Field &o) const { return q() == o.q(); }
  bool operator!=(const Field &o) const { return !(*this == o); }

private:
  struct Tables {
    unsigned p = 0, f = 0, q = 0;
    std::vector<unsigned> modulus;
    std::vector<Elem> exp;
    std::vector<std::uint32_t> log;
  };
  std::shared_ptr<const Tables> t_;
};

class FqMatrix {
public:
  FqMatrix(Field field, std::size_t rows, std::size_t cols);
  static FqMatrix identity(Field field, std::size_t n);
  static FqMatrix from_rows(Field field, const std::vector<Vec> &rows, std::size_t cols);

  const Field &field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Elem &at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Elem at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Vec row(std::size_t r) const;
  std::vector<Vec> row_list() const;

  FqMatrix operator*(const FqMatrix &o) const;
  bool operator==(const FqMatrix &o) const;
  bool operator!=(const FqMatrix &o) const { return !(*this == o); }
  FqMatrix transpose() const;
  FqMatrix inverse() const;
  FqMatrix scaled(Elem s) const;
  std::size_t rank() const;
  /// Reduced row-echelon form with zero rows removed.
  FqMatrix rref() const;
  /// Basis of {x : x M = 0} (left kernel) as rows in reduced echelon form.
  FqMatrix left_kernel() const;
  FqMatrix kronecker(const FqMatrix &o) const;
  Vec apply(const Vec &v) const;

  std::string to_text() const;
  static FqMatrix parse_text(Field field, const std::string &text, std::size_t cols);

private:
  Field field_;
  std::size_t rows_, cols_;
  std::vector<Elem> data_;
};

enum class FormKind { alternating, symmetric };

struct FormedSpace {
  Field field;
  std::size_t dim;
  FqMatrix gram;
  FormKind kind;

  FormedSpace(Field fld, FqMatrix g, FormKind k);
  Elem form(const Vec &u, const Vec &v) const;
  bool nondegenerate() const { return gram.rank() == dim; }
};

/// Basis order e_1..e_n, f_1..f_n with B(e_i, f_i) = 1 and B(f_i, e_i) = -1.
std::shared_ptr<const FormedSpace> standard_symplectic(unsigned n, const Field &field);
Vec basis_e(const FormedSpace &V, unsigned i);
Vec basis_f(const FormedSpace &V, unsigned i);

class Subspace {
public:
  Subspace(std::shared_ptr<const FormedSpace> ambient, const std::vector<Vec> &spanning);
  Subspace(std::shared_ptr<const FormedSpace> ambient, const FqMatrix &spanning);

  const FormedSpace &ambient() const { return *ambient_; }
  const std::shared_ptr<const FormedSpace> &ambient_ptr() const { return ambient_; }
  const FqMatrix &basis() const { return basis_; }
  std::size_t dim() const { return basis_.rows(); }
  bool contains(const Vec &v) const;
  /// Gram matrix of the form restricted to the echelon basis.
  FqMatrix restricted_gram() const;
  Subspace image(const FqMatrix &m) const;

  bool operator==(const Subspace &o) const { return basis_ == o.basis_; }
  bool operator!=(const Subspace &o) const { return !(*this == o); }

private:
  std::shared_ptr<const FormedSpace> ambient_;
  FqMatrix basis_;
};

Subspace intersect(const Subspace &a, const Subspace &b);
Subspace sum(const Subspace &a, const Subspace &b);
Subspace perp(const Subspace &w);
Subspace radical(const Subspace &w);

struct HyperbolicPair {
  Vec u, w;
};

std::vector<HyperbolicPair> symplectic_basis(const Subspace &w);

struct HyperbolicComplement {
  Subspace complement;
  std::vector<HyperbolicPair> pairs;
};

HyperbolicComplement hyperbolic_complement(const Subspace &w0);

struct FormRestriction {
  std::size_t dim = 0, rank = 0, radical_dim = 0;
  bool operator==(const FormRestriction &o) const = default;
};

struct PairProfile {
  std::size_t dim1 = 0, dim2 = 0, dim_meet = 0;
  FormRestriction meet, w1_meet_w2perp, w2_meet_w1perp;
  bool operator==(const PairProfile &o) const = default;
};

PairProfile pair_profile(const Subspace &w1, const Subspace &w2);
std::string to_string(const PairProfile &p);

/// Generators of Sp_{2n}(q) preserving the standard symplectic form.
std::vector<FqMatrix> sp_generators(unsigned n, const Field &field);

/// Nondegenerate quadratic form of minus type in dimension 2m, q odd:
/// x_1x_2 + ... + x_{2m-3}x_{2m-2} + x_{2m-1}^2 - nu x_{2m}^2.
struct QuadraticForm {
  Field field;
  std::size_t dim;
  FqMatrix polar;
  Elem value(const Vec &v) const;
};

QuadraticForm minus_type_form(unsigned m, const Field &field);
/// All reflections in nonsingular vectors of the form, one per projective point.
std::vector<FqMatrix> reflection_generators(const QuadraticForm &Q);
/// A similitude of Q with a nonsquare multiplier (m >= 1, q odd).
FqMatrix minus_type_similitude(unsigned m, const Field &field);

/// Integer encoding of a vector: sum v_i q^i.
std::uint64_t encode(const Vec &v, unsigned q);
Vec decode(std::uint64_t code, std::size_t dim, unsigned q);
/// Scale so that the first nonzero coordinate is 1.
Vec normalize_projective(const Field &field, Vec v);

} // namespace cgt::linalg
