#include "lift.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <unordered_map>

#include "cgt/error.hpp"

namespace cgt::subgroups::detail {

using perm::Point;

namespace {

// ---------------------------------------------------------------------------
// Linear algebra over GF(p) for small p

using Row = std::vector<std::uint8_t>;
using Mat = std::vector<Row>;

struct Fp {
  unsigned p;
  std::vector<std::uint8_t> inv;
  explicit Fp(unsigned prime) : p(prime), inv(prime, 0) {
    for (unsigned a = 1; a < p; ++a)
      for (unsigned b = 1; b < p; ++b)
        if (a * b % p == 1)
          inv[a] = static_cast<std::uint8_t>(b);
  }
  std::uint8_t neg(unsigned a) const { return static_cast<std::uint8_t>((p - a) % p); }
};

Mat identity(std::size_t n) {
  Mat m(n, Row(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    m[i][i] = 1;
  return m;
}

Mat multiply(const Fp &F, const Mat &A, const Mat &B) {
  const std::size_t cols = B.empty() ? 0 : B[0].size();
  Mat C(A.size(), Row(cols, 0));
  for (std::size_t i = 0; i < A.size(); ++i) {
    std::vector<unsigned> acc(cols, 0);
    for (std::size_t k = 0; k < B.size(); ++k)
      if (A[i][k])
        for (std::size_t j = 0; j < cols; ++j)
          acc[j] += A[i][k] * B[k][j];
    for (std::size_t j = 0; j < cols; ++j)
      C[i][j] = static_cast<std::uint8_t>(acc[j] % F.p);
  }
  return C;
}

Row row_times(const Fp &F, const Row &v, const Mat &A) {
  const std::size_t cols = A.empty() ? 0 : A[0].size();
  std::vector<unsigned> acc(cols, 0);
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k])
      for (std::size_t j = 0; j < cols; ++j)
        acc[j] += v[k] * A[k][j];
  Row out(cols);
  for (std::size_t j = 0; j < cols; ++j)
    out[j] = static_cast<std::uint8_t>(acc[j] % F.p);
  return out;
}

Mat transpose(const Mat &A, std::size_t cols) {
  Mat T(cols, Row(A.size(), 0));
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      T[j][i] = A[i][j];
  return T;
}

/// Reduced row-echelon basis of a subspace of GF(p)^n, built row by row.
class Echelon {
public:
  Echelon(const Fp &F, std::size_t n) : F_(F), n_(n) {}

  std::size_t dim() const { return rows_.size(); }
  const std::vector<Row> &rows() const { return rows_; }
  const std::vector<std::size_t> &pivots() const { return piv_; }

  /// Reduces v against the basis; returns the first nonzero column or n.
  std::size_t reduce(Row &v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const unsigned c = v[piv_[r]];
      if (c)
        axpy(v, rows_[r], F_.neg(c), piv_[r]);
    }
    for (std::size_t j = 0; j < n_; ++j)
      if (v[j])
        return j;
    return n_;
  }

  /// Adds v when it is independent; returns its pivot or n.
  std::size_t insert(Row v) {
    const std::size_t pc = reduce(v);
    if (pc == n_)
      return n_;
    const unsigned s = F_.inv[v[pc]];
    for (std::size_t j = pc; j < n_; ++j)
      v[j] = static_cast<std::uint8_t>(v[j] * s % F_.p);
    for (auto &r : rows_)
      if (r[pc])
        axpy(r, v, F_.neg(r[pc]), pc);
    auto at = std::lower_bound(piv_.begin(), piv_.end(), pc) - piv_.begin();
    piv_.insert(piv_.begin() + at, pc);
    rows_.insert(rows_.begin() + at, std::move(v));
    return pc;
  }

  std::string key() const {
    std::string s;
    for (const auto &r : rows_)
      s.append(r.begin(), r.end());
    return s;
  }

private:
  void axpy(Row &v, const Row &w, unsigned c, std::size_t from) const {
    for (std::size_t j = from; j < n_; ++j)
      if (w[j])
        v[j] = static_cast<std::uint8_t>((v[j] + c * w[j]) % F_.p);
  }

  const Fp &F_;
  std::size_t n_;
  std::vector<Row> rows_;
  std::vector<std::size_t> piv_;
};

/// Basis of {x : W x^T = 0} for a basis W in reduced echelon form.
std::vector<Row> nullspace(const Fp &F, const Echelon &W, std::size_t n) {
  std::vector<bool> pivot(n, false);
  for (auto c : W.pivots())
    pivot[c] = true;
  std::vector<Row> out;
  for (std::size_t f = 0; f < n; ++f) {
    if (pivot[f])
      continue;
    Row x(n, 0);
    x[f] = 1;
    for (std::size_t r = 0; r < W.dim(); ++r)
      x[W.pivots()[r]] = F.neg(W.rows()[r][f]);
    out.push_back(std::move(x));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Elementary abelian layers M/K of a series of normal subgroups

struct Layer {
  unsigned p = 0;
  GroupHandle M, K;
  /// basis[j] generates chain[j] modulo chain[j + 1]; chain[0] = M and
  /// chain[dim] = K.
  std::vector<Permutation> basis;
  std::vector<GroupHandle> chain;

  std::size_t dim() const { return basis.size(); }

  Row coords(Permutation m) const {
    Row v(dim(), 0);
    for (std::size_t j = 0; j < dim(); ++j) {
      const Permutation inv = basis[j].inverse();
      unsigned c = 0;
      while (!chain[j + 1].contains(m)) {
        m = inv * m;
        if (++c >= p)
          fail(ErrorKind::invalid_argument, "lift: element outside the layer");
      }
      v[j] = static_cast<std::uint8_t>(c);
    }
    return v;
  }

  Permutation element(const Row &v) const {
    Permutation x(M.degree());
    for (std::size_t j = 0; j < dim(); ++j)
      for (unsigned c = 0; c < v[j]; ++c)
        x = x * basis[j];
    return x;
  }

  /// Rows are the coordinates of the conjugates of the basis by g.
  Mat action(const Permutation &g) const {
    Mat A;
    for (const auto &m : basis)
      A.push_back(coords(m.conjugate(g)));
    return A;
  }
};

unsigned smallest_prime(const BigInt &n) {
  for (unsigned p = 2;; ++p)
    if (n % p == 0)
      return p;
}

Layer make_layer(const GroupHandle &M, const GroupHandle &K, unsigned p) {
  std::vector<Permutation> gens = K.generators();
  BigInt order = K.order();
  std::vector<Permutation> up;
  std::vector<GroupHandle> chain_up{K};
  for (const auto &x : M.generators()) {
    if (chain_up.back().contains(x))
      continue;
    gens.push_back(x);
    order *= p;
    GroupHandle C(M.degree(), gens);
    C.set_order_hint(order);
    up.push_back(x);
    chain_up.push_back(C);
  }
  if (order != M.order())
    fail(ErrorKind::invalid_argument, "lift: layer is not elementary abelian");
  Layer L;
  L.p = p;
  L.M = M;
  L.K = K;
  L.basis.assign(up.rbegin(), up.rend());
  L.chain.assign(chain_up.rbegin(), chain_up.rend());
  return L;
}

/// Layers of characteristic subgroups of B: derived series refined by
/// p-th power subgroups.
std::vector<Layer> build_layers(const GroupHandle &B) {
  auto ds = perm::derived_series(B);
  if (ds.back().order() != 1)
    fail(ErrorKind::precondition_violation, "lift: the radical is not soluble");
  std::vector<Layer> out;
  for (std::size_t i = 0; i + 1 < ds.size(); ++i) {
    GroupHandle X = ds[i];
    const GroupHandle &Y = ds[i + 1];
    while (X.order() != Y.order()) {
      const unsigned p = smallest_prime(X.order() / Y.order());
      std::vector<Permutation> gens = Y.generators();
      for (const auto &x : X.generators()) {
        Permutation y = x.pow(p);
        if (!Y.contains(y))
          gens.push_back(y);
      }
      GroupHandle Xp(B.degree(), gens);
      out.push_back(make_layer(X, Xp, p));
      X = Xp;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Words over the generators t_0..t_{r-1}, u_0..u_{n-1}: letter i + 1 or
// -(i + 1).

using Word = std::vector<int>;

Word inverse(const Word &w) {
  Word out(w.rbegin(), w.rend());
  for (auto &l : out)
    l = -l;
  return out;
}

Permutation evaluate(const Word &w, const std::vector<Permutation> &gens,
                     const std::vector<Permutation> &inv, std::size_t degree) {
  Permutation x(degree);
  for (int l : w)
    x = x * (l > 0 ? gens[l - 1] : inv[-l - 1]);
  return x;
}

/// A subgroup T of the top group with a presentation on the generators tau.
struct TopClass {
  std::vector<Permutation> tau;
  std::vector<Permutation> lifts;
  std::vector<Word> relators;
  BigInt order;
};

std::vector<Permutation> small_generating_set(const GroupHandle &T, std::mt19937_64 &rng) {
  std::vector<Permutation> gens;
  BigInt reached = 1;
  for (const auto &g : T.generators()) {
    auto trial = gens;
    trial.push_back(g);
    BigInt o = GroupHandle(T.degree(), trial).order();
    if (o > reached) {
      gens = trial;
      reached = o;
    }
  }
  if (gens.size() > 2)
    for (int attempt = 0; attempt < 200; ++attempt) {
      std::vector<Permutation> pair{perm::random_element(T, rng), perm::random_element(T, rng)};
      if (GroupHandle(T.degree(), pair).order() == T.order())
        return pair;
    }
  return gens;
}

/// Relators from the non-tree edges of a Cayley graph spanning tree.
std::vector<Word> cayley_relators(const std::vector<Permutation> &tau, std::size_t degree) {
  std::unordered_map<Permutation, std::size_t, perm::PermutationHash> index;
  std::vector<Permutation> elems{Permutation(degree)};
  std::vector<Word> words{{}};
  index.emplace(elems[0], 0);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::set<std::pair<std::size_t, std::size_t>> tree;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < tau.size(); ++j) {
      Permutation y = elems[i] * tau[j];
      auto [it, fresh] = index.emplace(y, elems.size());
      if (fresh) {
        Word w = words[i];
        w.push_back(static_cast<int>(j) + 1);
        elems.push_back(std::move(y));
        words.push_back(std::move(w));
        tree.insert({i, j});
      } else {
        edges.push_back({i, j});
      }
    }
  std::vector<Word> rels;
  for (auto [i, j] : edges) {
    Word w = words[i];
    w.push_back(static_cast<int>(j) + 1);
    const auto back = inverse(words[index.at(elems[i] * tau[j])]);
    w.insert(w.end(), back.begin(), back.end());
    rels.push_back(std::move(w));
  }
  return rels;
}

// ---------------------------------------------------------------------------
// Lifting

struct Node {
  std::size_t top = 0;
  std::vector<Permutation> t, u;
  std::vector<unsigned> rel;
  BigInt order;
};

struct OrderFilter {
  BigInt min_order;
  std::vector<std::pair<BigInt, BigInt>> parts;

  OrderFilter(const BigInt &min, const BigInt &multiple) : min_order(min) {
    for (const auto &[p, e] : numth::factorize(multiple))
      parts.push_back({BigInt(p), numth::ipow(BigInt(p), e)});
  }
  bool admits(const BigInt &order) const {
    if (order < min_order)
      return false;
    for (const auto &[p, pe] : parts)
      if (numth::p_part(order, p).value < pe)
        return false;
    return true;
  }
  bool final(const BigInt &order) const {
    if (order < min_order)
      return false;
    for (const auto &pp : parts)
      if (order % pp.second != 0)
        return false;
    return true;
  }
};

class Lifter {
public:
  Lifter(const GroupHandle &G, const Radical &R, const OrderFilter &filter,
         const EnumerationOptions &opts)
      : G_(G), R_(R), filter_(filter), opts_(opts) {}

  std::vector<Node> roots(std::vector<TopClass> &tops) {
    auto cls = subgroup_classes(R_.top, 1);
    // Preimages of top elements, by breadth-first search over G's generators.
    std::unordered_map<Permutation, Permutation, perm::PermutationHash> pre;
    std::vector<Permutation> queue{Permutation(R_.top.degree())};
    pre.emplace(queue[0], Permutation(G_.degree()));
    std::vector<Permutation> gimg;
    for (const auto &g : G_.generators())
      gimg.push_back(R_.to_top(g));
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (std::size_t s = 0; s < gimg.size(); ++s) {
        Permutation y = queue[i] * gimg[s];
        if (pre.count(y))
          continue;
        pre.emplace(y, pre.at(queue[i]) * G_.generators()[s]);
        queue.push_back(std::move(y));
      }
    std::mt19937_64 rng(perm::default_seed());
    std::vector<Node> out;
    for (const auto &c : cls.classes) {
      Node n;
      n.order = R_.B.order() * c.order;
      if (!filter_.admits(n.order))
        continue;
      TopClass T;
      T.order = c.order;
      if (c.order > 1)
        T.tau = small_generating_set(c.representative, rng);
      for (const auto &x : T.tau)
        T.lifts.push_back(pre.at(x));
      T.relators = cayley_relators(T.tau, R_.top.degree());
      n.top = tops.size();
      n.t = T.lifts;
      tops.push_back(std::move(T));
      out.push_back(std::move(n));
    }
    return out;
  }

  /// Classes of V with K <= V and VM = U, for U described by the node.
  std::vector<Node> lift(const Node &node, const TopClass &T, const Layer &L) {
    const Fp F(L.p);
    const std::size_t r = node.t.size(), n = node.u.size(), ng = r + n, a = L.dim();
    const std::size_t deg = G_.degree();

    // Largest codimension of V cap M in M allowed by the filter.
    std::size_t cmax = 0;
    {
      BigInt o = node.order;
      while (cmax < a) {
        o /= L.p;
        if (!filter_.admits(o))
          break;
        ++cmax;
      }
    }

    // Sifting chain W_k = <M, u_k..u_{n-1}>.
    std::vector<GroupHandle> W(n + 1);
    {
      std::vector<Permutation> gens = L.M.generators();
      BigInt o = L.M.order();
      W[n] = L.M;
      for (std::size_t k = n; k-- > 0;) {
        gens.push_back(node.u[k]);
        o *= node.rel[k];
        W[k] = GroupHandle(deg, gens);
        W[k].set_order_hint(o);
      }
    }
    std::vector<Permutation> uinv;
    for (const auto &x : node.u)
      uinv.push_back(x.inverse());
    auto normal_word = [&](Permutation z, std::size_t from) {
      Word w;
      for (std::size_t k = from; k < n; ++k) {
        unsigned c = 0;
        while (!W[k + 1].contains(z)) {
          z = uinv[k] * z;
          if (++c >= node.rel[k])
            fail(ErrorKind::invalid_argument, "lift: sifting failed");
        }
        for (unsigned i = 0; i < c; ++i)
          w.push_back(static_cast<int>(r + k) + 1);
      }
      return w;
    };

    std::vector<Permutation> gens = node.t;
    gens.insert(gens.end(), node.u.begin(), node.u.end());
    std::vector<Permutation> ginv;
    for (const auto &x : gens)
      ginv.push_back(x.inverse());

    // Relators of U/M.
    std::vector<Word> rels;
    auto close = [&](Word w, std::size_t from) {
      Word nw = normal_word(evaluate(w, gens, ginv, deg), from);
      auto back = inverse(nw);
      w.insert(w.end(), back.begin(), back.end());
      rels.push_back(std::move(w));
    };
    for (const auto &w : T.relators)
      close(w, 0);
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < n; ++k)
        close({-int(j) - 1, int(r + k) + 1, int(j) + 1}, 0);
    for (std::size_t k = 0; k < n; ++k) {
      close(Word(node.rel[k], int(r + k) + 1), k + 1);
      for (std::size_t j = 0; j < k; ++j)
        close({-int(r + j) - 1, int(r + k) + 1, int(r + j) + 1}, j + 1);
    }

    // Action of the generators on M/K, and each relator as an affine map
    // x -> c + sum_i x_i C_i of the cocycle values x_i.
    std::vector<Mat> act, actinv;
    for (std::size_t i = 0; i < ng; ++i) {
      act.push_back(L.action(gens[i]));
      actinv.push_back(L.action(ginv[i]));
    }
    struct Affine {
      Row c;
      std::map<std::size_t, Mat> coef;
    };
    std::vector<Affine> aff;
    for (const auto &w : rels) {
      Affine A;
      A.c = L.coords(evaluate(w, gens, ginv, deg));
      Mat suffix = identity(a);
      for (std::size_t pos = w.size(); pos-- > 0;) {
        const int l = w[pos];
        const std::size_t i = static_cast<std::size_t>(std::abs(l) - 1);
        Mat term = l > 0 ? suffix : multiply(F, actinv[i], suffix);
        auto &slot = A.coef.try_emplace(i, Mat(a, Row(a, 0))).first->second;
        for (std::size_t x = 0; x < a; ++x)
          for (std::size_t y = 0; y < a; ++y)
            slot[x][y] = static_cast<std::uint8_t>(
                (slot[x][y] + (l > 0 ? term[x][y] : F.neg(term[x][y]))) % F.p);
        suffix = multiply(F, l > 0 ? act[i] : actinv[i], suffix);
      }
      aff.push_back(std::move(A));
    }

    // Annihilators of the U-submodules of M/K of codimension <= cmax, as
    // submodules of the dual module.
    std::vector<Mat> dual;
    for (const auto &m : act)
      dual.push_back(transpose(m, a));
    std::vector<Echelon> annihilators = dual_submodules(F, dual, a, cmax);

    std::vector<Node> found;
    std::vector<GroupHandle> reps;
    std::vector<std::shared_ptr<perm::ActionMap>> actions;
    for (const auto &Wd : annihilators) {
      const std::size_t q = Wd.dim();
      BigInt vorder = node.order;
      for (std::size_t i = 0; i < q; ++i)
        vorder /= L.p;
      if (!filter_.admits(vorder))
        continue;
      const auto &pc = Wd.pivots();
      const Mat Wt = transpose(Wd.rows(), a);
      auto project = [&](const Row &v) { return row_times(F, v, Wt); };

      // Cocycle system in the unknowns z_{i,l}: x_i = sum_l z_{i,l} e_{pc_l}.
      const std::size_t nv = ng * q;
      Echelon sys(F, nv + 1);
      bool consistent = true;
      for (const auto &A : aff) {
        std::vector<Row> eq(q, Row(nv + 1, 0));
        const Row pcst = project(A.c);
        for (std::size_t m = 0; m < q; ++m)
          eq[m][nv] = F.neg(pcst[m]);
        for (const auto &[i, C] : A.coef)
          for (std::size_t l = 0; l < q; ++l) {
            const Row pr = project(C[pc[l]]);
            for (std::size_t m = 0; m < q; ++m)
              eq[m][i * q + l] = pr[m];
          }
        for (auto &e : eq)
          if (sys.insert(std::move(e)) == nv) {
            consistent = false;
            break;
          }
        if (!consistent)
          break;
      }
      if (!consistent)
        continue;
      Row z0(nv, 0);
      for (std::size_t k = 0; k < sys.dim(); ++k)
        z0[sys.pivots()[k]] = sys.rows()[k][nv];
      std::vector<Row> Z;
      {
        std::vector<bool> pivot(nv, false);
        for (auto c : sys.pivots())
          pivot[c] = true;
        for (std::size_t f = 0; f < nv; ++f) {
          if (pivot[f])
            continue;
          Row x(nv, 0);
          x[f] = 1;
          for (std::size_t k = 0; k < sys.dim(); ++k)
            x[sys.pivots()[k]] = F.neg(sys.rows()[k][f]);
          Z.push_back(std::move(x));
        }
      }
      // Coboundaries, then a complement of them in the cocycles.
      Echelon Bs(F, nv);
      for (std::size_t l2 = 0; l2 < q; ++l2) {
        Row m(a, 0);
        m[pc[l2]] = 1;
        Row v(nv, 0);
        for (std::size_t i = 0; i < ng; ++i) {
          Row d = row_times(F, m, act[i]);
          for (std::size_t x = 0; x < a; ++x)
            d[x] = static_cast<std::uint8_t>((m[x] + F.p - d[x]) % F.p);
          const Row pd = project(d);
          for (std::size_t l = 0; l < q; ++l)
            v[i * q + l] = pd[l];
        }
        Bs.insert(std::move(v));
      }
      std::vector<Row> E;
      for (const auto &z : Z)
        if (Bs.insert(z) != nv)
          E.push_back(z);
      std::uint64_t count = 1;
      for (std::size_t i = 0; i < E.size(); ++i) {
        count *= L.p;
        if (count > opts_.cohomology_limit)
          fail(ErrorKind::resource_limit,
               "lift: more than " + std::to_string(opts_.cohomology_limit) +
                   " complement classes in one layer");
      }

      // V cap M = S, the annihilator of Wd.
      std::vector<Permutation> selems;
      for (const auto &s : nullspace(F, Wd, a))
        selems.push_back(L.element(s));

      std::vector<std::uint8_t> coef(E.size(), 0);
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        Row z = z0;
        for (std::size_t e = 0; e < E.size(); ++e)
          for (std::size_t x = 0; x < nv; ++x)
            z[x] = static_cast<std::uint8_t>((z[x] + coef[e] * E[e][x]) % F.p);
        for (std::size_t e = 0; e < E.size(); ++e)
          if (++coef[e] < L.p)
            break;
          else
            coef[e] = 0;

        Node child;
        child.top = node.top;
        child.order = vorder;
        for (std::size_t i = 0; i < ng; ++i) {
          Row xv(a, 0);
          for (std::size_t l = 0; l < q; ++l)
            xv[pc[l]] = z[i * q + l];
          Permutation g = gens[i] * L.element(xv);
          (i < r ? child.t : child.u).push_back(std::move(g));
        }
        child.rel = node.rel;
        for (const auto &s : selems) {
          child.u.push_back(s);
          child.rel.push_back(L.p);
        }
        GroupHandle V = handle(child, L.K);
        if (is_new_class(V, reps, actions))
          found.push_back(std::move(child));
      }
    }
    return found;
  }

  GroupHandle handle(const Node &n, const GroupHandle &K) const {
    std::vector<Permutation> gens = K.generators();
    gens.insert(gens.end(), n.t.begin(), n.t.end());
    gens.insert(gens.end(), n.u.begin(), n.u.end());
    GroupHandle V(G_.degree(), std::move(gens));
    V.set_order_hint(n.order);
    return V;
  }

private:
  static std::vector<Echelon> dual_submodules(const Fp &F, const std::vector<Mat> &mats,
                                              std::size_t a, std::size_t cmax) {
    std::vector<Echelon> found{Echelon(F, a)};
    std::set<std::string> keys{found[0].key()};
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < a; ++i)
      total *= F.p;
    for (std::size_t idx = 0; idx < found.size(); ++idx) {
      if (found[idx].dim() >= cmax)
        continue;
      std::vector<bool> seen(total, false);
      for (std::uint64_t code = 1; code < total; ++code) {
        if (seen[code])
          continue;
        Row v(a);
        std::uint64_t c = code;
        for (std::size_t j = 0; j < a; ++j) {
          v[j] = static_cast<std::uint8_t>(c % F.p);
          c /= F.p;
        }
        Echelon W = found[idx];
        std::vector<Row> todo{v};
        bool small = true;
        while (!todo.empty() && small) {
          Row x = std::move(todo.back());
          todo.pop_back();
          if (W.insert(x) == a)
            continue;
          if (W.dim() > cmax) {
            small = false;
            break;
          }
          for (const auto &m : mats)
            todo.push_back(row_times(F, x, m));
        }
        // Every vector of v F_p^* + W spins to the same space.
        mark_class(F, found[idx], v, seen, a);
        if (!small)
          continue;
        if (keys.insert(W.key()).second)
          found.push_back(std::move(W));
      }
    }
    return found;
  }

  static void mark_class(const Fp &F, const Echelon &W, const Row &v, std::vector<bool> &seen,
                         std::size_t a) {
    const std::size_t d = W.dim();
    std::vector<unsigned> coef(d, 0);
    for (;;) {
      for (unsigned lam = 1; lam < F.p; ++lam) {
        std::uint64_t code = 0;
        for (std::size_t j = a; j-- > 0;) {
          unsigned x = lam * v[j];
          for (std::size_t k = 0; k < d; ++k)
            x += coef[k] * W.rows()[k][j];
          code = code * F.p + x % F.p;
        }
        seen[code] = true;
      }
      std::size_t k = 0;
      while (k < d && ++coef[k] == F.p)
        coef[k++] = 0;
      if (k == d)
        break;
    }
  }

  /// Candidates from one U are conjugate in G only by elements normalising
  /// U, so they are compared with earlier candidates from the same U.
  bool is_new_class(const GroupHandle &V, std::vector<GroupHandle> &reps,
                    std::vector<std::shared_ptr<perm::ActionMap>> &actions) {
    for (std::size_t i = 0; i < reps.size(); ++i) {
      if (reps[i].order() != V.order())
        continue;
      if (!actions[i])
        actions[i] = std::make_shared<perm::ActionMap>(perm::coset_action(G_, reps[i]));
      const auto &A = *actions[i];
      std::vector<Permutation> img;
      for (const auto &v : V.generators())
        img.push_back(A.image_of(v));
      for (Point x = 0; x < A.reps.size(); ++x) {
        bool fixed = true;
        for (const auto &h : img)
          if (h[x] != x) {
            fixed = false;
            break;
          }
        if (fixed)
          return false;
      }
    }
    reps.push_back(V);
    actions.push_back(nullptr);
    return true;
  }

  const GroupHandle &G_;
  const Radical &R_;
  const OrderFilter &filter_;
  const EnumerationOptions &opts_;
};

} // namespace

std::optional<Radical> find_radical(const GroupHandle &G) {
  if (perm::is_soluble(G)) {
    Radical R;
    R.B = G;
    R.top = GroupHandle(1, {});
    R.to_top = [](const Permutation &) { return Permutation(1); };
    return R;
  }
  if (!G.wreath())
    return std::nullopt;
  const auto w = G.wreath();
  GroupHandle C(w->component_degree, w->component_generators);
  if (!perm::is_soluble(C))
    return std::nullopt;
  std::vector<Permutation> base;
  for (std::size_t b = 0; b < w->k; ++b)
    for (const auto &g : w->component_generators) {
      std::vector<Point> img(G.degree());
      for (Point x = 0; x < G.degree(); ++x)
        img[x] = x;
      for (Point x = 0; x < w->component_degree; ++x)
        img[b * w->component_degree + x] =
            static_cast<Point>(b * w->component_degree + g[x]);
      base.emplace_back(std::move(img));
    }
  Radical R;
  R.B = GroupHandle(G.degree(), base);
  R.B.set_order_hint(numth::ipow(w->component_order, static_cast<unsigned>(w->k)));
  const std::size_t d = w->component_degree, k = w->k;
  R.to_top = [d, k](const Permutation &g) {
    std::vector<Point> img(k);
    for (std::size_t b = 0; b < k; ++b)
      img[b] = static_cast<Point>(g[static_cast<Point>(b * d)] / d);
    return Permutation(std::move(img));
  };
  std::vector<Permutation> tgens;
  for (const auto &g : G.generators())
    tgens.push_back(R.to_top(g));
  R.top = GroupHandle(k, tgens);
  return R;
}

SubgroupClasses lift_classes(const GroupHandle &G, const Radical &R, const BigInt &min_order,
                             const BigInt &multiple_of, const EnumerationOptions &opts) {
  const OrderFilter filter(min_order, multiple_of);
  Lifter lifter(G, R, filter, opts);
  std::vector<TopClass> tops;
  std::vector<Node> nodes = lifter.roots(tops);
  const auto layers = build_layers(R.B);
  for (const auto &L : layers) {
    std::vector<Node> next;
    for (const auto &node : nodes) {
      auto kids = lifter.lift(node, tops[node.top], L);
      next.insert(next.end(), std::make_move_iterator(kids.begin()),
                  std::make_move_iterator(kids.end()));
    }
    nodes = std::move(next);
  }
  SubgroupClasses out;
  out.strategy = Strategy::soluble_lift;
  out.certified = true;
  const GroupHandle trivial = perm::trivial_group(G.degree());
  for (const auto &node : nodes) {
    if (!filter.final(node.order))
      continue;
    GroupHandle H = lifter.handle(node, trivial);
    GroupHandle N = normalizer(G, H);
    out.classes.push_back({H, G.order() / N.order(), node.order});
  }
  std::stable_sort(out.classes.begin(), out.classes.end(),
                   [](const SubgroupClass &a, const SubgroupClass &b) { return a.order < b.order; });
  return out;
}

} // namespace cgt::subgroups::detail
