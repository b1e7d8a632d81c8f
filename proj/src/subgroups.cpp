#include "cgt/subgroups.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "cgt/error.hpp"
#include "lift.hpp"

namespace cgt::subgroups {

using perm::ElementIndex;
using perm::Point;

std::string strategy_name(Strategy s) {
  switch (s) {
  case Strategy::automatic: return "automatic";
  case Strategy::naive: return "naive-closure";
  case Strategy::cyclic_extension: return "cyclic-extension";
  case Strategy::soluble_lift: return "soluble-lift";
  case Strategy::bounded_index: return "bounded-index";
  }
  return "?";
}

namespace {

using Set = std::vector<std::uint32_t>;

std::uint64_t hash_set(const Set &s) {
  std::uint64_t h = 1469598103934665603ULL ^ s.size();
  for (auto x : s) {
    h ^= x + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    h *= 1099511628211ULL;
  }
  return h;
}

bool set_contains(const Set &s, std::uint32_t x) { return std::binary_search(s.begin(), s.end(), x); }

/// Element ranks of a small group with multiplication.
class Table {
public:
  Table(const GroupHandle &G, std::uint64_t cap) : idx_(G, cap) {
    n_ = idx_.size();
    depth_ = idx_.base().size();
    bimg_.resize(n_ * depth_);
    scratch_.resize(depth_);
    for (std::size_t e = 0; e < n_; ++e)
      for (std::size_t j = 0; j < depth_; ++j)
        bimg_[e * depth_ + j] = idx_[e][idx_.base()[j]];
    if (n_ <= 2048) {
      table_.resize(n_ * n_);
      for (std::uint32_t a = 0; a < n_; ++a)
        for (std::uint32_t b = 0; b < n_; ++b)
          table_[std::size_t(a) * n_ + b] = slow_mul(a, b);
    }
    inv_.resize(n_);
    order_.resize(n_);
    for (std::uint32_t a = 0; a < n_; ++a) {
      inv_[a] = static_cast<std::uint32_t>(idx_.rank(idx_[a].inverse()));
      order_[a] = idx_[a].small_order();
    }
    for (const auto &g : G.generators())
      gens_.push_back(static_cast<std::uint32_t>(idx_.rank(g)));
    stamp_.assign(n_, 0);
  }

  std::size_t size() const { return n_; }
  std::uint32_t identity() const { return static_cast<std::uint32_t>(idx_.identity()); }
  const Permutation &element(std::uint32_t a) const { return idx_[a]; }
  std::uint32_t rank(const Permutation &g) const { return static_cast<std::uint32_t>(idx_.rank(g)); }
  const std::vector<std::uint32_t> &generators() const { return gens_; }
  std::uint32_t inv(std::uint32_t a) const { return inv_[a]; }
  std::uint64_t order(std::uint32_t a) const { return order_[a]; }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (!table_.empty())
      return table_[std::size_t(a) * n_ + b];
    return slow_mul(a, b);
  }
  std::uint32_t conj(std::uint32_t x, std::uint32_t g) const { return mul(mul(inv_[g], x), g); }
  std::uint32_t pow(std::uint32_t x, std::uint64_t k) const {
    std::uint32_t r = identity();
    for (std::uint64_t i = 0; i < k; ++i)
      r = mul(r, x);
    return r;
  }

  Set conj_set(const Set &s, std::uint32_t g) const {
    Set out;
    out.reserve(s.size());
    for (auto x : s)
      out.push_back(conj(x, g));
    std::sort(out.begin(), out.end());
    return out;
  }

  Set closure(const std::vector<std::uint32_t> &gens) {
    ++tick_;
    Set out{identity()};
    stamp_[identity()] = tick_;
    for (std::size_t h = 0; h < out.size(); ++h)
      for (auto g : gens) {
        auto y = mul(out[h], g);
        if (stamp_[y] != tick_) {
          stamp_[y] = tick_;
          out.push_back(y);
        }
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  GroupHandle handle(const std::vector<std::uint32_t> &gens, std::size_t order) const {
    std::vector<Permutation> perms;
    for (auto g : gens)
      if (g != identity())
        perms.push_back(idx_[g]);
    GroupHandle H(idx_[0].degree(), std::move(perms));
    H.set_order_hint(order);
    return H;
  }

private:
  std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const {
    const Permutation &pb = idx_[b];
    for (std::size_t j = 0; j < depth_; ++j)
      scratch_[j] = pb[bimg_[std::size_t(a) * depth_ + j]];
    return static_cast<std::uint32_t>(idx_.rank_of_base_images(scratch_));
  }

  ElementIndex idx_;
  std::size_t n_ = 0, depth_ = 0;
  std::vector<Point> bimg_;
  std::vector<std::uint32_t> table_, inv_, gens_;
  std::vector<std::uint64_t> order_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t tick_ = 0;
  mutable std::vector<Point> scratch_;
};

/// Conjugacy classes of subgroups registered by the exact set of every
/// conjugate.
class Registry {
public:
  struct Class {
    Set elems;
    std::vector<std::uint32_t> gens;
    std::size_t size = 0;
    std::vector<std::uint32_t> normalizer_gens;
  };

  explicit Registry(Table &t) : t_(t) {}

  const std::vector<Class> &classes() const { return classes_; }
  std::size_t subgroup_count() const { return total_; }

  std::optional<std::size_t> find(const Set &s) const {
    auto it = known_.find(hash_set(s));
    if (it == known_.end())
      return std::nullopt;
    for (auto [c, g] : it->second)
      if (classes_[c].elems.size() == s.size() && t_.conj_set(classes_[c].elems, g) == s)
        return c;
    return std::nullopt;
  }

  /// Registers the class of s; with want_normalizer the class also records
  /// Schreier generators of N_G(s).
  std::size_t add(Set s, std::vector<std::uint32_t> gens, bool want_normalizer) {
    const std::size_t id = classes_.size();
    std::vector<Set> conjs{s};
    std::vector<std::uint32_t> via{t_.identity()};
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> local;
    local[hash_set(s)].push_back(0);
    std::vector<std::uint32_t> schreier;
    for (std::size_t i = 0; i < conjs.size(); ++i)
      for (auto g : t_.generators()) {
        Set c = t_.conj_set(conjs[i], g);
        auto h = hash_set(c);
        auto &bucket = local[h];
        std::optional<std::size_t> hit;
        for (auto j : bucket)
          if (conjs[j] == c)
            hit = j;
        std::uint32_t gi = t_.mul(via[i], g);
        if (!hit) {
          bucket.push_back(conjs.size());
          conjs.push_back(std::move(c));
          via.push_back(gi);
        } else if (want_normalizer) {
          std::uint32_t z = t_.mul(gi, t_.inv(via[*hit]));
          if (!set_contains(s, z))
            schreier.push_back(z);
        }
      }
    for (std::size_t i = 0; i < conjs.size(); ++i)
      known_[hash_set(conjs[i])].emplace_back(id, via[i]);
    total_ += conjs.size();
    Class cls;
    cls.size = conjs.size();
    cls.gens = std::move(gens);
    if (want_normalizer) {
      // Keep only Schreier generators that enlarge the group generated so far.
      std::vector<std::uint32_t> ngens = cls.gens;
      Set cur = s;
      std::sort(schreier.begin(), schreier.end());
      schreier.erase(std::unique(schreier.begin(), schreier.end()), schreier.end());
      for (auto z : schreier)
        if (!set_contains(cur, z)) {
          ngens.push_back(z);
          cur = t_.closure(ngens);
        }
      cls.normalizer_gens = std::move(ngens);
    }
    cls.elems = std::move(s);
    classes_.push_back(std::move(cls));
    return id;
  }

private:
  Table &t_;
  std::vector<Class> classes_;
  std::unordered_map<std::uint64_t, std::vector<std::pair<std::size_t, std::uint32_t>>> known_;
  std::size_t total_ = 0;
};

std::vector<std::uint32_t> reduce_gens(Table &t, const std::vector<std::uint32_t> &gens,
                                       std::size_t order) {
  std::vector<std::uint32_t> out;
  Set cur{t.identity()};
  for (auto g : gens) {
    if (set_contains(cur, g))
      continue;
    out.push_back(g);
    cur = t.closure(out);
    if (cur.size() == order)
      break;
  }
  return out;
}

/// Cyclic subgroups with one generator each.
std::vector<std::pair<std::uint32_t, Set>> cyclic_subgroups(Table &t) {
  std::vector<std::pair<std::uint32_t, Set>> out;
  std::vector<bool> covered(t.size(), false);
  for (std::uint32_t x = 0; x < t.size(); ++x) {
    if (covered[x])
      continue;
    Set c = t.closure({x});
    const std::uint64_t o = t.order(x);
    std::uint32_t y = t.identity();
    for (std::uint64_t k = 0; k < o; ++k) {
      if (std::gcd(k, o) == 1)
        covered[y] = true;
      y = t.mul(y, x);
    }
    out.emplace_back(x, std::move(c));
  }
  return out;
}

void naive_enumeration(Table &t, Registry &reg) {
  auto cyc = cyclic_subgroups(t);
  for (auto &[x, c] : cyc)
    if (!reg.find(c))
      reg.add(c, x == t.identity() ? std::vector<std::uint32_t>{} : std::vector<std::uint32_t>{x},
              false);
  for (std::size_t i = 0; i < reg.classes().size(); ++i) {
    for (const auto &[x, c] : cyc) {
      const auto &R = reg.classes()[i];
      if (set_contains(R.elems, x))
        continue;
      auto gens = R.gens;
      gens.push_back(x);
      Set v = t.closure(gens);
      if (!reg.find(v))
        reg.add(std::move(v), std::move(gens), false);
    }
  }
}

bool is_prime_small(std::uint64_t k) {
  if (k < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= k; ++d)
    if (k % d == 0)
      return false;
  return true;
}

void perfect_seeds(const GroupHandle &G, Table &t, Registry &reg) {
  GroupHandle P = perm::perfect_residual(G);
  if (P.order() == 1)
    return;
  std::vector<std::uint32_t> pel;
  for (std::uint32_t r = 0; r < t.size(); ++r)
    if (P.contains(t.element(r)))
      pel.push_back(r);
  // One representative per G-class of elements of P.
  std::vector<bool> seen(t.size(), false);
  std::vector<std::uint32_t> reps;
  for (auto r : pel) {
    if (seen[r] || r == t.identity())
      continue;
    reps.push_back(r);
    std::vector<std::uint32_t> cls{r};
    seen[r] = true;
    for (std::size_t h = 0; h < cls.size(); ++h)
      for (auto g : t.generators()) {
        auto y = t.conj(cls[h], g);
        if (!seen[y]) {
          seen[y] = true;
          cls.push_back(y);
        }
      }
  }
  std::unordered_map<std::uint64_t, std::vector<Set>> tried;
  std::vector<bool> hit(t.size());
  for (auto x : reps) {
    // <x,y^c> is conjugate to <x,y> for c centralizing x, so one y per
    // orbit of the centralizer suffices.
    std::vector<std::uint32_t> cent;
    for (std::uint32_t c = 0; c < t.size(); ++c)
      if (t.mul(x, c) == t.mul(c, x))
        cent.push_back(c);
    auto cgens = reduce_gens(t, cent, cent.size());
    std::fill(hit.begin(), hit.end(), false);
    for (auto y : pel) {
      if (hit[y])
        continue;
      std::vector<std::uint32_t> orbit{y};
      hit[y] = true;
      for (std::size_t h = 0; h < orbit.size(); ++h)
        for (auto c : cgens) {
          auto z = t.conj(orbit[h], c);
          if (!hit[z]) {
            hit[z] = true;
            orbit.push_back(z);
          }
        }
      Set s = t.closure({x, y});
      auto &bucket = tried[hash_set(s)];
      if (std::find(bucket.begin(), bucket.end(), s) != bucket.end())
        continue;
      bucket.push_back(s);
      GroupHandle S = t.handle({x, y}, s.size());
      if (perm::derived_subgroup(S).order() != s.size())
        continue;
      if (!reg.find(s))
        reg.add(std::move(s), {x, y}, true);
    }
  }
}

void cyclic_extension(const GroupHandle &G, Table &t, Registry &reg) {
  reg.add(Set{t.identity()}, {}, true);
  perfect_seeds(G, t, reg);
  std::vector<bool> done(t.size(), false);
  for (std::size_t i = 0; i < reg.classes().size(); ++i) {
    const Set U = reg.classes()[i].elems;
    const auto ugens = reg.classes()[i].gens;
    Set N = t.closure(reg.classes()[i].normalizer_gens);
    std::fill(done.begin(), done.end(), false);
    for (auto z : N) {
      if (done[z] || set_contains(U, z))
        continue;
      std::uint64_t k = 1;
      std::uint32_t zk = z;
      while (!set_contains(U, zk)) {
        zk = t.mul(zk, z);
        ++k;
      }
      if (!is_prime_small(k))
        continue;
      Set V = U;
      std::uint32_t zp = t.identity();
      for (std::uint64_t j = 1; j < k; ++j) {
        zp = t.mul(zp, z);
        for (auto u : U) {
          auto y = t.mul(u, zp);
          V.push_back(y);
          done[y] = true;
        }
      }
      std::sort(V.begin(), V.end());
      if (!reg.find(V)) {
        auto gens = ugens;
        gens.push_back(z);
        reg.add(std::move(V), std::move(gens), true);
      }
    }
  }
}

SubgroupClasses from_registry(Table &t, const Registry &reg, const BigInt &min_order,
                              Strategy strategy) {
  SubgroupClasses out;
  out.strategy = strategy;
  for (const auto &c : reg.classes()) {
    if (BigInt(c.elems.size()) < min_order)
      continue;
    auto gens = reduce_gens(t, c.gens, c.elems.size());
    out.classes.push_back({t.handle(gens, c.elems.size()), c.size, c.elems.size()});
  }
  std::stable_sort(out.classes.begin(), out.classes.end(),
                   [](const SubgroupClass &a, const SubgroupClass &b) { return a.order < b.order; });
  return out;
}

SubgroupClasses bounded_index(const GroupHandle &G, const BigInt &min_order) {
  std::vector<GroupHandle> cand{G};
  for (const auto &D : perm::derived_series(G))
    cand.push_back(D);
  for (const auto &orb : perm::orbits(G)) {
    if (orb.size() < 2)
      continue;
    cand.push_back(perm::pointwise_stabilizer(G, {orb[0]}));
    GroupHandle R = perm::restrict_to_orbit(G, orb);
    auto prim = perm::is_primitive(R);
    if (!prim.primitive) {
      std::vector<std::vector<Point>> blocks;
      for (const auto &b : prim.blocks) {
        std::vector<Point> bb;
        for (auto p : b)
          bb.push_back(orb[p]);
        blocks.push_back(bb);
      }
      // Points outside this orbit stay in singleton blocks.
      std::vector<bool> used(G.degree(), false);
      for (auto p : orb)
        used[p] = true;
      for (Point p = 0; p < G.degree(); ++p)
        if (!used[p])
          blocks.push_back({p});
      cand.push_back(perm::block_stabilizer(G, blocks, 0));
    }
  }
  if (G.wreath()) {
    // The base group and its products with point stabilizers of the top group.
    const auto &w = *G.wreath();
    std::vector<Permutation> base;
    for (std::size_t b = 0; b < w.k; ++b)
      for (const auto &g : w.component_generators) {
        std::vector<Point> img(G.degree());
        std::iota(img.begin(), img.end(), Point{0});
        for (Point x = 0; x < w.component_degree; ++x)
          img[b * w.component_degree + x] = static_cast<Point>(b * w.component_degree + g[x]);
        base.emplace_back(std::move(img));
      }
    cand.push_back(perm::normal_closure(G, base));
  }
  // One round of pairwise intersections.
  const std::size_t first = cand.size();
  for (std::size_t i = 0; i < first; ++i)
    for (std::size_t j = i + 1; j < first; ++j)
      cand.push_back(intersection(cand[i], cand[j]));
  SubgroupClasses out;
  out.strategy = Strategy::bounded_index;
  out.certified = false;
  for (const auto &H : cand) {
    if (H.order() < min_order)
      continue;
    bool dup = false;
    for (const auto &c : out.classes)
      if (c.order == H.order() && is_conjugate_subgroup(G, H, c.representative)) {
        dup = true;
        break;
      }
    if (dup)
      continue;
    GroupHandle N = normalizer(G, H);
    out.classes.push_back({H, G.order() / N.order(), H.order()});
  }
  std::stable_sort(out.classes.begin(), out.classes.end(),
                   [](const SubgroupClass &a, const SubgroupClass &b) { return a.order < b.order; });
  return out;
}

} // namespace

namespace {

SubgroupClasses enumerate(const GroupHandle &G, const BigInt &min_order,
                          const EnumerationOptions &opts) {
  const BigInt order = G.order();
  // A multiple of multiple_of has at least that order.
  const BigInt least = std::max({min_order, opts.multiple_of, BigInt(1)});
  const BigInt index = order / least;
  Strategy s = opts.strategy;
  std::optional<detail::Radical> radical;
  auto liftable = [&] {
    if (index > opts.lift_index_limit)
      return false;
    radical = detail::find_radical(G);
    return radical && radical->top.order() <= opts.exhaustive_limit;
  };
  if (s == Strategy::automatic) {
    if (order <= opts.naive_limit)
      s = Strategy::naive;
    else if (order <= opts.exhaustive_limit)
      s = Strategy::cyclic_extension;
    else if (liftable())
      s = Strategy::soluble_lift;
    else if (index <= opts.index_limit)
      s = Strategy::bounded_index;
    else
      fail(ErrorKind::resource_limit,
           "subgroup enumeration: |G| = " + order.str() + " exceeds the exhaustive limit " +
               std::to_string(opts.exhaustive_limit) + ", and the index bound " + index.str() +
               " exceeds the lifting limit " + std::to_string(opts.lift_index_limit) +
               " or no soluble normal subgroup with small quotient is known; raise the limits "
               "or the minimum order");
  }
  if (s == Strategy::soluble_lift) {
    if (!radical && !liftable())
      fail(ErrorKind::resource_limit,
           "subgroup enumeration: soluble lifting needs |G| / min_order <= " +
               std::to_string(opts.lift_index_limit) +
               " and a soluble normal subgroup with quotient of order <= " +
               std::to_string(opts.exhaustive_limit));
    return detail::lift_classes(G, *radical, min_order, opts.multiple_of, opts);
  }
  if (s == Strategy::bounded_index)
    return bounded_index(G, least);
  const std::uint64_t limit = s == Strategy::naive ? opts.naive_limit : opts.exhaustive_limit;
  if (order > limit)
    fail(ErrorKind::resource_limit, "subgroup enumeration: |G| = " + order.str() + " exceeds the " +
                                        strategy_name(s) + " limit " + std::to_string(limit));
  Table t(G, limit);
  Registry reg(t);
  if (s == Strategy::naive)
    naive_enumeration(t, reg);
  else
    cyclic_extension(G, t, reg);
  return from_registry(t, reg, min_order, s);
}

} // namespace

SubgroupClasses subgroup_classes(const GroupHandle &G, const BigInt &min_order,
                                 const EnumerationOptions &opts) {
  SubgroupClasses out = enumerate(G, min_order, opts);
  if (opts.multiple_of != 1)
    std::erase_if(out.classes,
                  [&](const SubgroupClass &c) { return c.order % opts.multiple_of != 0; });
  return out;
}

// ---------------------------------------------------------------------------
// Intersection

namespace {

class IntersectionSearch {
public:
  IntersectionSearch(const GroupHandle &H, const GroupHandle &K)
      : H_(H), K_(K), kc_(K.chain()), base_(kc_.base()), hc_(perm::chain_with_base(H, base_)) {}

  std::vector<Permutation> run() {
    const std::size_t m = base_.size();
    const std::size_t n = K_.degree();
    for (std::size_t i = m; i-- > 0;) {
      std::vector<Point> failed;
      auto roots = partition(n);
      for (Point gamma : hc_.level(i).orbit) {
        if (roots[gamma] == roots[base_[i]])
          continue;
        bool skip = false;
        for (Point f : failed)
          if (roots[f] == roots[gamma])
            skip = true;
        if (skip)
          continue;
        auto h = search(i, gamma);
        if (h) {
          found_.push_back(*h);
          roots = partition(n);
        } else {
          failed.push_back(gamma);
        }
      }
    }
    return found_;
  }

private:
  std::vector<Point> partition(std::size_t n) const {
    std::vector<Point> root(n);
    std::iota(root.begin(), root.end(), Point{0});
    std::function<Point(Point)> find = [&](Point x) {
      while (root[x] != x)
        x = root[x] = root[root[x]];
      return x;
    };
    for (const auto &g : found_)
      for (Point p = 0; p < n; ++p) {
        Point a = find(p), b = find(g[p]);
        if (a != b)
          root[std::max(a, b)] = std::min(a, b);
      }
    for (Point p = 0; p < n; ++p)
      root[p] = find(p);
    return root;
  }

  std::optional<Permutation> search(std::size_t i, Point gamma) const {
    if (!kc_.in_orbit(i, gamma))
      return std::nullopt;
    Permutation P = hc_.transversal(i, gamma);
    Permutation kinv = kc_.transversal(i, gamma).inverse();
    return dfs(i + 1, P, kinv);
  }

  std::optional<Permutation> dfs(std::size_t j, const Permutation &P, const Permutation &kinv) const {
    if (j == base_.size()) {
      // The element of K with these base images is unique; H may need levels
      // below the base of K to reach it.
      Permutation k = kinv.inverse();
      if (H_.contains(k))
        return k;
      return std::nullopt;
    }
    for (Point delta : hc_.level(j).orbit) {
      Point y = kinv[P[delta]];
      if (!kc_.in_orbit(j, y))
        continue;
      Permutation v = kc_.transversal(j, y);
      auto r = dfs(j + 1, hc_.transversal(j, delta) * P, kinv * v.inverse());
      if (r)
        return r;
    }
    return std::nullopt;
  }

  const GroupHandle &H_, &K_;
  const perm::StabChain &kc_;
  std::vector<Point> base_;
  perm::StabChain hc_;
  std::vector<Permutation> found_;
};

} // namespace

GroupHandle intersection(const GroupHandle &H, const GroupHandle &K) {
  if (H.degree() != K.degree())
    fail(ErrorKind::invalid_argument, "intersection: degree mismatch");
  const GroupHandle &small = H.order() <= K.order() ? H : K;
  const GroupHandle &large = H.order() <= K.order() ? K : H;
  if (perm::is_subgroup(small, large))
    return small;
  IntersectionSearch s(large, small);
  return GroupHandle(H.degree(), s.run());
}

GroupHandle normalizer(const GroupHandle &G, const GroupHandle &H, std::uint64_t cap) {
  auto A = perm::coset_action(G, H, cap);
  std::vector<Permutation> himg;
  for (const auto &h : H.generators())
    himg.push_back(A.image_of(h));
  std::vector<Permutation> gens = H.generators();
  std::size_t fixed = 0;
  for (Point p = 0; p < A.reps.size(); ++p) {
    bool fix = true;
    for (const auto &h : himg)
      if (h[p] != p) {
        fix = false;
        break;
      }
    if (fix) {
      ++fixed;
      if (p != 0)
        gens.push_back(A.reps[p]);
    }
  }
  GroupHandle N(G.degree(), std::move(gens));
  N.set_order_hint(H.order() * fixed);
  return N;
}

std::optional<Permutation> is_conjugate_subgroup(const GroupHandle &G, const GroupHandle &H,
                                                 const GroupHandle &K, std::uint64_t cap) {
  if (H.order() != K.order())
    return std::nullopt;
  if (!perm::is_subgroup(H, G) || !perm::is_subgroup(K, G))
    fail(ErrorKind::precondition_violation, "is_conjugate_subgroup: H and K must lie in G");
  auto A = perm::coset_action(G, K, cap);
  std::vector<Permutation> himg;
  for (const auto &h : H.generators())
    himg.push_back(A.image_of(h));
  for (Point p = 0; p < A.reps.size(); ++p) {
    bool fix = true;
    for (const auto &h : himg)
      if (h[p] != p) {
        fix = false;
        break;
      }
    if (fix)
      return A.reps[p].inverse();
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Isomorphism

Fingerprint fingerprint(const GroupHandle &G, std::uint64_t cap) {
  if (G.order() > cap)
    fail(ErrorKind::resource_limit, "fingerprint: group order exceeds cap");
  Fingerprint f;
  f.order = G.order();
  for (const auto &x : perm::elements(G, cap))
    ++f.element_orders[x.small_order()];
  auto ds = perm::derived_series(G);
  f.derived_length = ds.size() - 1;
  f.centre_order = perm::centre(G, cap).order();
  f.abelianization_order = ds.size() > 1 ? BigInt(G.order() / ds[1].order()) : BigInt(1);
  return f;
}

GroupHandle graph_subgroup(std::size_t degA, std::size_t degB, const GeneratorMap &pairs) {
  std::vector<Permutation> gens;
  for (const auto &[a, b] : pairs) {
    std::vector<Point> img(degA + degB);
    for (Point x = 0; x < degA; ++x)
      img[x] = a[x];
    for (Point x = 0; x < degB; ++x)
      img[degA + x] = static_cast<Point>(degA + b[x]);
    gens.emplace_back(std::move(img));
  }
  return GroupHandle(degA + degB, std::move(gens));
}

namespace {

std::vector<Permutation> small_generating_set(const GroupHandle &A) {
  const BigInt order = A.order();
  std::mt19937_64 rng(perm::default_seed());
  for (int tries = 0; tries < 200; ++tries) {
    Permutation x = perm::random_element(A, rng), y = perm::random_element(A, rng);
    if (perm::build_chain(A.degree(), {x, y}).order() == order)
      return {x, y};
  }
  std::vector<Permutation> out;
  for (const auto &g : A.generators()) {
    out.push_back(g);
    if (perm::build_chain(A.degree(), out).order() == order)
      break;
  }
  // Drop redundant generators.
  for (std::size_t i = out.size(); i-- > 0;) {
    auto trial = out;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (perm::build_chain(A.degree(), trial).order() == order)
      out = trial;
  }
  return out;
}

class IsoSearch {
public:
  IsoSearch(const GroupHandle &A, const GroupHandle &B, std::uint64_t cap)
      : A_(A), B_(B), ia_(A, cap), ib_(B, cap) {
    agens_ = small_generating_set(A);
    auto ca = perm::conjugacy_classes(ia_, A);
    auto cb = perm::conjugacy_classes(ib_, B);
    a_class_size_.resize(ia_.size());
    for (const auto &c : ca)
      for (auto r : c)
        a_class_size_[r] = c.size();
    b_class_size_.resize(ib_.size());
    b_is_rep_.assign(ib_.size(), false);
    for (const auto &c : cb) {
      b_is_rep_[c.front()] = true;
      for (auto r : c)
        b_class_size_[r] = c.size();
    }
    b_order_.resize(ib_.size());
    for (std::size_t r = 0; r < ib_.size(); ++r)
      b_order_[r] = ib_[r].small_order();
  }

  std::optional<GeneratorMap> run() {
    images_.clear();
    if (dfs(0)) {
      GeneratorMap m;
      for (std::size_t i = 0; i < agens_.size(); ++i)
        m.emplace_back(agens_[i], images_[i]);
      return m;
    }
    return std::nullopt;
  }

private:
  bool consistent(std::size_t i, const Permutation &b) const {
    for (std::size_t j = 0; j < i; ++j) {
      if ((agens_[j] * agens_[i]).order() != (images_[j] * b).order())
        return false;
      if ((agens_[j] * agens_[i].inverse()).order() != (images_[j] * b.inverse()).order())
        return false;
    }
    return true;
  }

  bool dfs(std::size_t i) {
    if (i == agens_.size()) {
      GeneratorMap m;
      for (std::size_t k = 0; k < agens_.size(); ++k)
        m.emplace_back(agens_[k], images_[k]);
      if (graph_subgroup(A_.degree(), B_.degree(), m).order() != A_.order())
        return false;
      return perm::build_chain(B_.degree(), images_).order() == B_.order();
    }
    const Permutation &a = agens_[i];
    const std::uint64_t ord = a.small_order();
    const std::size_t cls = a_class_size_[ia_.rank(a)];
    for (std::size_t r = 0; r < ib_.size(); ++r) {
      if (b_order_[r] != ord || b_class_size_[r] != cls)
        continue;
      // Inner automorphisms of B let the first image be a class representative.
      if (i == 0 && !b_is_rep_[r])
        continue;
      if (!consistent(i, ib_[r]))
        continue;
      images_.push_back(ib_[r]);
      if (dfs(i + 1))
        return true;
      images_.pop_back();
    }
    return false;
  }

  const GroupHandle &A_, &B_;
  ElementIndex ia_, ib_;
  std::vector<Permutation> agens_, images_;
  std::vector<std::size_t> a_class_size_, b_class_size_;
  std::vector<bool> b_is_rep_;
  std::vector<std::uint64_t> b_order_;
};

} // namespace

std::optional<GeneratorMap> find_isomorphism(const GroupHandle &A, const GroupHandle &B,
                                             std::uint64_t cap) {
  if (A.order() != B.order())
    return std::nullopt;
  if (A.order() > cap || B.order() > cap)
    fail(ErrorKind::resource_limit, "isomorphism test: group order exceeds cap");
  if (A.order() == 1)
    return GeneratorMap{};
  if (!(fingerprint(A, cap) == fingerprint(B, cap)))
    return std::nullopt;
  return IsoSearch(A, B, cap).run();
}

bool are_isomorphic(const GroupHandle &A, const GroupHandle &B, std::uint64_t cap) {
  return find_isomorphism(A, B, cap).has_value();
}

} // namespace cgt::subgroups
