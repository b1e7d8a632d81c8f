#include "cgt/linalg.hpp"

#include <algorithm>
#include <sstream>

#include "cgt/error.hpp"

namespace cgt::linalg {

namespace {

struct ModulusEntry {
  unsigned p, f;
  std::vector<unsigned> coeffs;
};

// Lexicographically smallest primitive polynomial for every p^f <= 3^10, f >= 2.
const std::vector<ModulusEntry> &modulus_table() {
  static const std::vector<ModulusEntry> table = {
    {2, 2, {1, 1}},
    {2, 3, {1, 1, 0}},
    {2, 4, {1, 1, 0, 0}},
    {2, 5, {1, 0, 1, 0, 0}},
    {2, 6, {1, 1, 0, 0, 0, 0}},
    {2, 7, {1, 1, 0, 0, 0, 0, 0}},
    {2, 8, {1, 0, 1, 1, 1, 0, 0, 0}},
    {2, 9, {1, 0, 0, 0, 1, 0, 0, 0, 0}},
    {2, 10, {1, 0, 0, 1, 0, 0, 0, 0, 0, 0}},
    {2, 11, {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0}},
    {2, 12, {1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0}},
    {2, 13, {1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0}},
    {2, 14, {1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0}},
    {2, 15, {1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}},
    {3, 2, {2, 1}},
    {3, 3, {1, 2, 0}},
    {3, 4, {2, 1, 0, 0}},
    {3, 5, {1, 2, 0, 0, 0}},
    {3, 6, {2, 1, 0, 0, 0, 0}},
    {3, 7, {1, 2, 1, 0, 0, 0, 0}},
    {3, 8, {2, 0, 0, 1, 0, 0, 0, 0}},
    {3, 9, {1, 0, 1, 2, 0, 0, 0, 0, 0}},
    {3, 10, {2, 1, 0, 1, 0, 0, 0, 0, 0, 0}},
    {5, 2, {2, 1}},
    {5, 3, {2, 3, 0}},
    {5, 4, {2, 2, 1, 0}},
    {5, 5, {2, 4, 0, 0, 0}},
    {5, 6, {2, 1, 0, 0, 0, 0}},
    {7, 2, {3, 1}},
    {7, 3, {2, 3, 0}},
    {7, 4, {5, 3, 1, 0}},
    {7, 5, {4, 1, 0, 0, 0}},
    {11, 2, {7, 1}},
    {11, 3, {4, 1, 0}},
    {11, 4, {2, 1, 0, 0}},
    {13, 2, {2, 1}},
    {13, 3, {6, 1, 0}},
    {13, 4, {2, 1, 1, 0}},
    {17, 2, {3, 1}},
    {17, 3, {3, 1, 0}},
    {19, 2, {2, 1}},
    {19, 3, {4, 1, 0}},
    {23, 2, {7, 1}},
    {23, 3, {3, 1, 0}},
    {29, 2, {3, 1}},
    {29, 3, {11, 1, 0}},
    {31, 2, {12, 1}},
    {31, 3, {14, 1, 0}},
    {37, 2, {5, 1}},
    {37, 3, {13, 1, 0}},
    {41, 2, {12, 1}},
    {43, 2, {3, 1}},
    {47, 2, {13, 1}},
    {53, 2, {5, 1}},
    {59, 2, {2, 1}},
    {61, 2, {2, 1}},
    {67, 2, {12, 1}},
    {71, 2, {11, 1}},
    {73, 2, {11, 1}},
    {79, 2, {3, 1}},
    {83, 2, {2, 1}},
    {89, 2, {6, 1}},
    {97, 2, {5, 1}},
    {101, 2, {3, 1}},
    {103, 2, {5, 1}},
    {107, 2, {5, 1}},
    {109, 2, {6, 1}},
    {113, 2, {10, 1}},
    {127, 2, {3, 1}},
    {131, 2, {14, 1}},
    {137, 2, {6, 1}},
    {139, 2, {2, 1}},
    {149, 2, {3, 1}},
    {151, 2, {12, 1}},
    {157, 2, {6, 1}},
    {163, 2, {11, 1}},
    {167, 2, {5, 1}},
    {173, 2, {5, 1}},
    {179, 2, {7, 1}},
    {181, 2, {18, 1}},
    {191, 2, {19, 1}},
    {193, 2, {5, 1}},
    {197, 2, {3, 1}},
    {199, 2, {6, 1}},
    {211, 2, {3, 1}},
    {223, 2, {5, 1}},
    {227, 2, {5, 1}},
    {229, 2, {6, 1}},
    {233, 2, {3, 1}},
    {239, 2, {13, 1}},
    {241, 2, {13, 1}},
  };
  return table;
}

bool small_prime(unsigned p) {
  if (p < 2)
    return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0)
      return false;
  return true;
}

} // namespace

Field::Field(unsigned p, unsigned f) {
  if (!small_prime(p) || f == 0)
    fail(ErrorKind::invalid_argument, "field characteristic must be prime and degree positive");
  auto t = std::make_shared<Tables>();
  t->p = p;
  t->f = f;
  unsigned long long q = 1;
  for (unsigned i = 0; i < f; ++i)
    q *= p;
  if (q > 65536 || (f > 1 && q > 59049))
    fail(ErrorKind::unsupported, "field order beyond the shipped table");
  t->q = static_cast<unsigned>(q);
  t->exp.resize(t->q - 1);
  t->log.assign(t->q, 0);
  if (f == 1) {
    t->modulus = {0};
    for (unsigned g = 1; g < p; ++g) {
      unsigned x = 1, k = 0;
      do {
        x = x * g % p;
        ++k;
      } while (x != 1);
      if (k == p - 1) {
        t->modulus = {(p - g) % p};
        x = 1;
        for (unsigned i = 0; i + 1 < p; ++i) {
          t->exp[i] = x;
          t->log[x] = i;
          x = x * g % p;
        }
        break;
      }
    }
  } else {
    const ModulusEntry *entry = nullptr;
    for (const auto &e : modulus_table())
      if (e.p == p && e.f == f)
        entry = &e;
    if (!entry)
      fail(ErrorKind::unsupported, "no modulus shipped for this field");
    t->modulus = entry->coeffs;
    std::vector<unsigned> digits(f, 0);
    digits[0] = 1;
    std::vector<bool> seen(t->q, false);
    for (unsigned i = 0; i + 1 < t->q; ++i) {
      Elem code = 0;
      for (unsigned j = f; j-- > 0;)
        code = code * p + digits[j];
      if (seen[code])
        fail(ErrorKind::invalid_argument, "field modulus is not primitive");
      seen[code] = true;
      t->exp[i] = code;
      t->log[code] = i;
      unsigned top = digits[f - 1];
      for (unsigned j = f - 1; j > 0; --j)
        digits[j] = (digits[j - 1] + p * p - top * t->modulus[j] % p) % p;
      digits[0] = (p * p - top * t->modulus[0] % p) % p;
    }
  }
  t_ = std::move(t);
}

Field Field::of_order(unsigned q) {
  if (q < 2)
    fail(ErrorKind::invalid_argument, "field order must be a prime power");
  unsigned p = 2;
  while (q % p)
    ++p;
  unsigned f = 0, r = q;
  while (r % p == 0) {
    r /= p;
    ++f;
  }
  if (r != 1)
    fail(ErrorKind::invalid_argument, "field order must be a prime power: " + std::to_string(q));
  return Field(p, f);
}

Elem Field::add(Elem a, Elem b) const {
  const unsigned p = t_->p;
  if (t_->f == 1)
    return (a + b) % p;
  if (p == 2)
    return a ^ b;
  Elem out = 0, scale = 1;
  while (a || b) {
    out += ((a % p + b % p) % p) * scale;
    a /= p;
    b /= p;
    scale *= p;
  }
  return out;
}

Elem Field::neg(Elem a) const {
  const unsigned p = t_->p;
  if (p == 2)
    return a;
  if (t_->f == 1)
    return (p - a) % p;
  Elem out = 0, scale = 1;
  while (a) {
    out += ((p - a % p) % p) * scale;
    a /= p;
    scale *= p;
  }
  return out;
}

Elem Field::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0)
    return 0;
  const unsigned n = t_->q - 1;
  return t_->exp[(t_->log[a] + t_->log[b]) % n];
}

Elem Field::inv(Elem a) const {
  if (a == 0)
    fail(ErrorKind::invalid_argument, "division by zero in finite field");
  const unsigned n = t_->q - 1;
  return t_->exp[(n - t_->log[a]) % n];
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (e == 0)
    return 1;
  if (a == 0)
    return 0;
  const unsigned n = t_->q - 1;
  return t_->exp[(static_cast<std::uint64_t>(t_->log[a]) * (e % n)) % n];
}

Elem Field::from_int(long long v) const {
  long long p = t_->p;
  return static_cast<Elem>(((v % p) + p) % p);
}

bool Field::is_square(Elem a) const {
  if (a == 0 || t_->p == 2)
    return true;
  return t_->log[a] % 2 == 0;
}

FqMatrix::FqMatrix(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FqMatrix FqMatrix::identity(Field field, std::size_t n) {
  FqMatrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i)
    m.at(i, i) = 1;
  return m;
}

FqMatrix FqMatrix::from_rows(Field field, const std::vector<Vec> &rows, std::size_t cols) {
  FqMatrix m(std::move(field), rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      fail(ErrorKind::invalid_argument, "row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) {
      if (rows[r][c] >= m.field().q())
        fail(ErrorKind::invalid_argument, "matrix entry outside the field");
      m.at(r, c) = rows[r][c];
    }
  }
  return m;
}

Vec FqMatrix::row(std::size_t r) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

std::vector<Vec> FqMatrix::row_list() const {
  std::vector<Vec> out;
  for (std::size_t r = 0; r < rows_; ++r)
    out.push_back(row(r));
  return out;
}

FqMatrix FqMatrix::operator*(const FqMatrix &o) const {
  if (cols_ != o.rows_ || field_ != o.field_)
    fail(ErrorKind::invalid_argument, "matrix shape mismatch");
  FqMatrix out(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      Elem a = at(i, k);
      if (a == 0)
        continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        out.at(i, j) = field_.add(out.at(i, j), field_.mul(a, o.at(k, j)));
    }
  return out;
}

bool FqMatrix::operator==(const FqMatrix &o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_ && data_ == o.data_;
}

FqMatrix FqMatrix::transpose() const {
  FqMatrix out(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out.at(j, i) = at(i, j);
  return out;
}

FqMatrix FqMatrix::scaled(Elem s) const {
  FqMatrix out = *this;
  for (auto &x : out.data_)
    x = field_.mul(x, s);
  return out;
}

namespace {

// In-place reduced row-echelon form; returns pivot columns.
std::vector<std::size_t> reduce(FqMatrix &m) {
  const Field &F = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m.at(piv, c) == 0)
      ++piv;
    if (piv == m.rows())
      continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j)
        std::swap(m.at(piv, j), m.at(r, j));
    Elem s = F.inv(m.at(r, c));
    for (std::size_t j = 0; j < m.cols(); ++j)
      m.at(r, j) = F.mul(m.at(r, j), s);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c) == 0)
        continue;
      Elem factor = F.neg(m.at(i, c));
      for (std::size_t j = 0; j < m.cols(); ++j)
        m.at(i, j) = F.add(m.at(i, j), F.mul(factor, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Rows spanning {x : R x^T = 0}.
FqMatrix nullspace_rows(const FqMatrix &R) {
  FqMatrix m = R;
  auto pivots = reduce(m);
  const Field &F = R.field();
  std::vector<bool> is_pivot(R.cols(), false);
  for (auto c : pivots)
    is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < R.cols(); ++free) {
    if (is_pivot[free])
      continue;
    Vec v(R.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = F.neg(m.at(i, free));
    basis.push_back(v);
  }
  FqMatrix out = FqMatrix::from_rows(F, basis, R.cols());
  reduce(out);
  return out;
}

} // namespace

std::size_t FqMatrix::rank() const {
  FqMatrix m = *this;
  return reduce(m).size();
}

FqMatrix FqMatrix::rref() const {
  FqMatrix m = *this;
  auto pivots = reduce(m);
  FqMatrix out(field_, pivots.size(), cols_);
  std::copy(m.data_.begin(), m.data_.begin() + static_cast<std::ptrdiff_t>(pivots.size() * cols_),
            out.data_.begin());
  return out;
}

FqMatrix FqMatrix::left_kernel() const { return nullspace_rows(transpose()); }

FqMatrix FqMatrix::inverse() const {
  if (rows_ != cols_)
    fail(ErrorKind::invalid_argument, "inverse of a non-square matrix");
  FqMatrix aug(field_, rows_, 2 * cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j)
      aug.at(i, j) = at(i, j);
    aug.at(i, cols_ + i) = 1;
  }
  auto pivots = reduce(aug);
  if (pivots.size() < rows_ || pivots[rows_ - 1] >= cols_)
    fail(ErrorKind::invalid_argument, "matrix is singular");
  FqMatrix out(field_, rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out.at(i, j) = aug.at(i, cols_ + j);
  return out;
}

FqMatrix FqMatrix::kronecker(const FqMatrix &o) const {
  FqMatrix out(field_, rows_ * o.rows_, cols_ * o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      for (std::size_t k = 0; k < o.rows_; ++k)
        for (std::size_t l = 0; l < o.cols_; ++l)
          out.at(i * o.rows_ + k, j * o.cols_ + l) = field_.mul(at(i, j), o.at(k, l));
  return out;
}

Vec FqMatrix::apply(const Vec &v) const {
  Vec out(cols_, 0);
  for (std::size_t k = 0; k < rows_; ++k) {
    if (v[k] == 0)
      continue;
    for (std::size_t j = 0; j < cols_; ++j)
      out[j] = field_.add(out[j], field_.mul(v[k], at(k, j)));
  }
  return out;
}

std::string FqMatrix::to_text() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j)
      os << (j ? " " : "") << at(i, j);
    os << '\n';
  }
  return os.str();
}

FqMatrix FqMatrix::parse_text(Field field, const std::string &text, std::size_t cols) {
  std::istringstream is(text);
  std::string line;
  std::vector<Vec> rows;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    Vec row;
    long long v;
    while (ls >> v) {
      if (v < 0 || v >= static_cast<long long>(field.q()))
        fail(ErrorKind::invalid_argument, "matrix entry outside [0, q)");
      row.push_back(static_cast<Elem>(v));
    }
    if (!ls.eof())
      fail(ErrorKind::invalid_argument, "non-integer token in matrix text");
    if (row.empty())
      continue;
    if (row.size() != cols)
      fail(ErrorKind::invalid_argument, "matrix row has wrong length");
    rows.push_back(row);
  }
  return from_rows(std::move(field), rows, cols);
}

FormedSpace::FormedSpace(Field fld, FqMatrix g, FormKind k)
    : field(std::move(fld)), dim(g.rows()), gram(std::move(g)), kind(k) {
  if (gram.rows() != gram.cols())
    fail(ErrorKind::invalid_argument, "Gram matrix must be square");
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      Elem a = gram.at(i, j), b = gram.at(j, i);
      bool ok = kind == FormKind::symmetric ? a == b : (a == field.neg(b) && (i != j || a == 0));
      if (!ok)
        fail(ErrorKind::invalid_argument, "Gram matrix does not match the form kind");
    }
}

Elem FormedSpace::form(const Vec &u, const Vec &v) const {
  Elem out = 0;
  for (std::size_t i = 0; i < dim; ++i) {
    if (u[i] == 0)
      continue;
    for (std::size_t j = 0; j < dim; ++j)
      if (gram.at(i, j) && v[j])
        out = field.add(out, field.mul(u[i], field.mul(gram.at(i, j), v[j])));
  }
  return out;
}

std::shared_ptr<const FormedSpace> standard_symplectic(unsigned n, const Field &field) {
  if (n == 0)
    fail(ErrorKind::invalid_argument, "symplectic rank must be positive");
  FqMatrix g(field, 2 * n, 2 * n);
  for (unsigned i = 0; i < n; ++i) {
    g.at(i, n + i) = 1;
    g.at(n + i, i) = field.neg(1);
  }
  return std::make_shared<const FormedSpace>(field, g, FormKind::alternating);
}

Vec basis_e(const FormedSpace &V, unsigned i) {
  Vec v(V.dim, 0);
  v.at(i - 1) = 1;
  return v;
}

Vec basis_f(const FormedSpace &V, unsigned i) {
  Vec v(V.dim, 0);
  v.at(V.dim / 2 + i - 1) = 1;
  return v;
}

Subspace::Subspace(std::shared_ptr<const FormedSpace> ambient, const std::vector<Vec> &spanning)
    : Subspace(ambient, FqMatrix::from_rows(ambient->field, spanning, ambient->dim)) {}

Subspace::Subspace(std::shared_ptr<const FormedSpace> ambient, const FqMatrix &spanning)
    : ambient_(std::move(ambient)), basis_(spanning.rref()) {
  if (spanning.cols() != ambient_->dim)
    fail(ErrorKind::invalid_argument, "spanning vectors do not match the ambient dimension");
}

bool Subspace::contains(const Vec &v) const {
  auto rows = basis_.row_list();
  rows.push_back(v);
  return FqMatrix::from_rows(ambient_->field, rows, ambient_->dim).rank() == dim();
}

FqMatrix Subspace::restricted_gram() const {
  return basis_ * ambient_->gram * basis_.transpose();
}

Subspace Subspace::image(const FqMatrix &m) const { return Subspace(ambient_, basis_ * m); }

namespace {

void same_ambient(const Subspace &a, const Subspace &b) {
  if (a.ambient_ptr() != b.ambient_ptr() &&
      !(a.ambient().gram == b.ambient().gram && a.ambient().kind == b.ambient().kind))
    fail(ErrorKind::invalid_argument, "subspaces live in different ambient spaces");
}

} // namespace

Subspace intersect(const Subspace &a, const Subspace &b) {
  same_ambient(a, b);
  auto rows = nullspace_rows(a.basis()).row_list();
  for (auto &r : nullspace_rows(b.basis()).row_list())
    rows.push_back(r);
  const auto &V = a.ambient();
  if (rows.empty())
    return Subspace(a.ambient_ptr(), FqMatrix::identity(V.field, V.dim));
  return Subspace(a.ambient_ptr(), nullspace_rows(FqMatrix::from_rows(V.field, rows, V.dim)));
}

Subspace sum(const Subspace &a, const Subspace &b) {
  same_ambient(a, b);
  auto rows = a.basis().row_list();
  for (auto &r : b.basis().row_list())
    rows.push_back(r);
  return Subspace(a.ambient_ptr(), rows);
}

Subspace perp(const Subspace &w) {
  const auto &V = w.ambient();
  if (!V.nondegenerate())
    fail(ErrorKind::unsupported, "perp requires a nondegenerate ambient space");
  if (w.dim() == 0)
    return Subspace(w.ambient_ptr(), FqMatrix::identity(V.field, V.dim));
  return Subspace(w.ambient_ptr(), nullspace_rows(w.basis() * V.gram));
}

Subspace radical(const Subspace &w) {
  if (w.dim() == 0)
    return w;
  FqMatrix coeffs = w.restricted_gram().left_kernel();
  if (coeffs.rows() == 0)
    return Subspace(w.ambient_ptr(), std::vector<Vec>{});
  return Subspace(w.ambient_ptr(), coeffs * w.basis());
}

namespace {

Vec axpy(const Field &F, const Vec &y, Elem a, const Vec &x) {
  Vec out = y;
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = F.add(out[i], F.mul(a, x[i]));
  return out;
}

Vec scale(const Field &F, Elem a, const Vec &x) {
  Vec out = x;
  for (auto &v : out)
    v = F.mul(a, v);
  return out;
}

} // namespace

std::vector<HyperbolicPair> symplectic_basis(const Subspace &w) {
  const auto &V = w.ambient();
  const Field &F = V.field;
  if (V.kind != FormKind::alternating)
    fail(ErrorKind::precondition_violation, "symplectic_basis needs an alternating form");
  if (w.dim() % 2)
    fail(ErrorKind::precondition_violation, "odd-dimensional subspace is degenerate");
  if (radical(w).dim() != 0)
    fail(ErrorKind::precondition_violation, "form restricted to the subspace is degenerate");
  std::vector<Vec> rest = w.basis().row_list();
  std::vector<HyperbolicPair> out;
  while (!rest.empty()) {
    Vec u = rest.front();
    rest.erase(rest.begin());
    auto it = std::find_if(rest.begin(), rest.end(), [&](const Vec &v) { return V.form(u, v) != 0; });
    Vec w2 = scale(F, F.inv(V.form(u, *it)), *it);
    rest.erase(it);
    for (auto &v : rest) {
      Elem bw = V.form(v, w2), bu = V.form(v, u);
      v = axpy(F, axpy(F, v, F.neg(bw), u), bu, w2);
    }
    out.push_back({u, w2});
  }
  return out;
}

HyperbolicComplement hyperbolic_complement(const Subspace &w0) {
  const auto &V = w0.ambient();
  const Field &F = V.field;
  if (!V.nondegenerate())
    fail(ErrorKind::precondition_violation, "hyperbolic_complement needs a nondegenerate ambient");
  if (radical(w0).dim() != w0.dim())
    fail(ErrorKind::precondition_violation, "subspace is not totally isotropic");
  auto ws = w0.basis().row_list();
  std::vector<HyperbolicPair> pairs;
  std::vector<Vec> us;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    std::vector<Vec> others;
    for (std::size_t j = 0; j < ws.size(); ++j)
      if (j != i)
        others.push_back(ws[j]);
    for (auto &u : us)
      others.push_back(u);
    Subspace T = perp(Subspace(w0.ambient_ptr(), others));
    Vec chosen;
    for (auto &t : T.basis().row_list())
      if (V.form(t, ws[i]) != 0) {
        chosen = scale(F, F.inv(V.form(t, ws[i])), t);
        break;
      }
    us.push_back(chosen);
    pairs.push_back({chosen, ws[i]});
  }
  return {Subspace(w0.ambient_ptr(), us), pairs};
}

namespace {

FormRestriction restriction(const Subspace &x) {
  FormRestriction r;
  r.dim = x.dim();
  r.rank = x.dim() ? x.restricted_gram().rank() : 0;
  r.radical_dim = r.dim - r.rank;
  return r;
}

} // namespace

PairProfile pair_profile(const Subspace &w1, const Subspace &w2) {
  same_ambient(w1, w2);
  PairProfile p;
  p.dim1 = w1.dim();
  p.dim2 = w2.dim();
  Subspace meet = intersect(w1, w2);
  p.dim_meet = meet.dim();
  p.meet = restriction(meet);
  p.w1_meet_w2perp = restriction(intersect(w1, perp(w2)));
  p.w2_meet_w1perp = restriction(intersect(w2, perp(w1)));
  return p;
}

std::string to_string(const PairProfile &p) {
  std::ostringstream os;
  auto one = [&](const char *name, const FormRestriction &r) {
    os << name << "{dim " << r.dim << ", rank " << r.rank << ", radical " << r.radical_dim << "}";
  };
  os << "dims(" << p.dim1 << ", " << p.dim2 << ", meet " << p.dim_meet << ") ";
  one("W1^W2", p.meet);
  os << ' ';
  one("W1^W2perp", p.w1_meet_w2perp);
  os << ' ';
  one("W2^W1perp", p.w2_meet_w1perp);
  return os.str();
}

namespace {

FqMatrix levi(const FqMatrix &A) {
  const std::size_t n = A.rows();
  FqMatrix out(A.field(), 2 * n, 2 * n);
  FqMatrix D = A.inverse().transpose();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      out.at(i, j) = A.at(i, j);
      out.at(n + i, n + j) = D.at(i, j);
    }
  return out;
}

} // namespace

std::vector<FqMatrix> sp_generators(unsigned n, const Field &field) {
  if (n == 0)
    fail(ErrorKind::invalid_argument, "symplectic rank must be positive");
  const std::size_t d = 2 * n;
  FqMatrix I = FqMatrix::identity(field, d);
  FqMatrix X = I;
  X.at(0, n) = 1;
  FqMatrix J(field, d, d);
  for (unsigned i = 0; i < n; ++i) {
    J.at(i, n + i) = 1;
    J.at(n + i, i) = field.neg(1);
  }
  FqMatrix D = FqMatrix::identity(field, n);
  D.at(0, 0) = field.primitive();
  std::vector<FqMatrix> gens;
  if (n == 1) {
    gens = {levi(D), X, J};
  } else {
    FqMatrix E = FqMatrix::identity(field, n);
    E.at(0, 1) = 1;
    FqMatrix P(field, n, n);
    for (unsigned i = 0; i < n; ++i)
      P.at(i, (i + 1) % n) = 1;
    // <D, E P> is GL_n(q) when q > 2; over GF(2) D is trivial and E, P are kept apart.
    if (field.q() == 2)
      gens = {levi(E), levi(P), X, J};
    else
      gens = {levi(D), levi(E * P), X, J};
  }
  std::vector<FqMatrix> out;
  for (auto &g : gens)
    if (g != I)
      out.push_back(g);
  return out;
}

Elem QuadraticForm::value(const Vec &v) const {
  // Q(v) = sum_{i<j} polar_ij v_i v_j + sum_i (polar_ii / 2) v_i^2, valid for q odd.
  Elem out = 0;
  Elem half = field.inv(2 % field.p());
  for (std::size_t i = 0; i < dim; ++i) {
    if (v[i] == 0)
      continue;
    out = field.add(out, field.mul(half, field.mul(polar.at(i, i), field.mul(v[i], v[i]))));
    for (std::size_t j = i + 1; j < dim; ++j)
      out = field.add(out, field.mul(polar.at(i, j), field.mul(v[i], v[j])));
  }
  return out;
}

namespace {

Elem smallest_nonsquare(const Field &F) {
  for (Elem a = 1; a < F.q(); ++a)
    if (!F.is_square(a))
      return a;
  fail(ErrorKind::invalid_argument, "field has no nonsquare");
}

} // namespace

QuadraticForm minus_type_form(unsigned m, const Field &field) {
  if (field.p() == 2)
    fail(ErrorKind::unsupported, "orthogonal groups are constructed for odd q only");
  if (m == 0)
    fail(ErrorKind::invalid_argument, "orthogonal rank must be positive");
  const std::size_t d = 2 * m;
  FqMatrix polar(field, d, d);
  for (unsigned i = 0; i + 1 < m; ++i) {
    polar.at(2 * i, 2 * i + 1) = 1;
    polar.at(2 * i + 1, 2 * i) = 1;
  }
  Elem nu = smallest_nonsquare(field);
  polar.at(d - 2, d - 2) = field.from_int(2);
  polar.at(d - 1, d - 1) = field.neg(field.mul(field.from_int(2), nu));
  return {field, d, polar};
}

std::vector<FqMatrix> reflection_generators(const QuadraticForm &Q) {
  const Field &F = Q.field;
  FormedSpace polar(F, Q.polar, FormKind::symmetric);
  std::vector<FqMatrix> out;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < Q.dim; ++i)
    total *= F.q();
  for (std::uint64_t code = 1; code < total; ++code) {
    Vec v = decode(code, Q.dim, F.q());
    if (normalize_projective(F, v) != v)
      continue;
    Elem qv = Q.value(v);
    if (qv == 0)
      continue;
    FqMatrix r(F, Q.dim, Q.dim);
    for (std::size_t i = 0; i < Q.dim; ++i) {
      Vec e(Q.dim, 0);
      e[i] = 1;
      Elem c = F.neg(F.div(polar.form(e, v), qv));
      Vec img = axpy(F, e, c, v);
      for (std::size_t j = 0; j < Q.dim; ++j)
        r.at(i, j) = img[j];
    }
    out.push_back(r);
  }
  return out;
}

FqMatrix minus_type_similitude(unsigned m, const Field &F) {
  QuadraticForm Q = minus_type_form(m, F);
  Elem lambda = smallest_nonsquare(F);
  const std::size_t d = 2 * m;
  FqMatrix S = FqMatrix::identity(F, d);
  for (unsigned i = 0; i + 1 < m; ++i)
    S.at(2 * i + 1, 2 * i + 1) = lambda;
  // Anisotropic plane: search the 2x2 block scaling its norm form by lambda.
  const unsigned q = F.q();
  for (Elem a = 0; a < q; ++a)
    for (Elem b = 0; b < q; ++b)
      for (Elem c = 0; c < q; ++c)
        for (Elem e = 0; e < q; ++e) {
          S.at(d - 2, d - 2) = a;
          S.at(d - 2, d - 1) = b;
          S.at(d - 1, d - 2) = c;
          S.at(d - 1, d - 1) = e;
          Vec x(d, 0), y(d, 0), z(d, 0);
          x[d - 2] = 1;
          y[d - 1] = 1;
          z[d - 2] = 1;
          z[d - 1] = 1;
          bool ok = true;
          for (const Vec &v : {x, y, z})
            ok = ok && Q.value(S.apply(v)) == F.mul(lambda, Q.value(v));
          if (ok && S.rank() == d)
            return S;
        }
  fail(ErrorKind::invalid_argument, "no similitude found");
}

std::uint64_t encode(const Vec &v, unsigned q) {
  std::uint64_t code = 0;
  for (std::size_t i = v.size(); i-- > 0;)
    code = code * q + v[i];
  return code;
}

Vec decode(std::uint64_t code, std::size_t dim, unsigned q) {
  Vec v(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    v[i] = static_cast<Elem>(code % q);
    code /= q;
  }
  return v;
}

Vec normalize_projective(const Field &field, Vec v) {
  for (Elem x : v)
    if (x != 0) {
      Elem s = field.inv(x);
      for (auto &y : v)
        y = field.mul(y, s);
      break;
    }
  return v;
}

} // namespace cgt::linalg
