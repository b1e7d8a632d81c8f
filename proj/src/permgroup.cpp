#include "cgt/permgroup.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "cgt/error.hpp"

namespace cgt::perm {

namespace {

std::atomic<std::uint64_t> g_seed{kDefaultSeed};

constexpr std::uint32_t kAbsent = 0xFFFFFFFFu;

} // namespace

std::uint64_t default_seed() { return g_seed.load(); }
void set_default_seed(std::uint64_t seed) { g_seed.store(seed); }

Permutation::Permutation(std::size_t degree) : img_(degree) {
  std::iota(img_.begin(), img_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (Point p : img_) {
    if (p >= img_.size() || seen[p])
      fail(ErrorKind::invalid_argument, "image list is not a permutation");
    seen[p] = true;
  }
}

Permutation Permutation::from_cycle_list(const std::vector<std::vector<Point>> &cycles,
                                         std::size_t degree) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  std::vector<bool> used(degree, false);
  for (const auto &c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] >= degree)
        fail(ErrorKind::invalid_argument, "cycle point exceeds the degree");
      if (used[c[i]])
        fail(ErrorKind::invalid_argument, "cycles are not disjoint");
      used[c[i]] = true;
      img[c[i]] = c[(i + 1) % c.size()];
    }
  }
  return Permutation(std::move(img));
}

Permutation Permutation::from_cycles(const std::string &text, std::size_t degree) {
  std::vector<std::vector<Point>> cycles;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  skip();
  if (text.substr(i) == "()")
    return Permutation(degree);
  while (i < text.size()) {
    skip();
    if (i >= text.size())
      break;
    if (text[i] != '(')
      throw SyntaxError(i, "expected '('");
    ++i;
    std::vector<Point> cyc;
    for (;;) {
      skip();
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        ++i;
      if (start == i)
        throw SyntaxError(i, "expected a point");
      unsigned long v = std::stoul(text.substr(start, i - start));
      if (v == 0)
        throw SyntaxError(start, "points are 1-based");
      cyc.push_back(static_cast<Point>(v - 1));
      skip();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      throw SyntaxError(i, "expected ',' or ')'");
    }
    cycles.push_back(cyc);
  }
  return from_cycle_list(cycles, degree);
}

Permutation Permutation::operator*(const Permutation &o) const {
  Permutation r;
  r.img_.resize(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i)
    r.img_[i] = o.img_[img_[i]];
  return r;
}

Permutation &Permutation::operator*=(const Permutation &o) {
  for (auto &x : img_)
    x = o.img_[x];
  return *this;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.img_.resize(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i)
    r.img_[img_[i]] = static_cast<Point>(i);
  return r;
}

Permutation Permutation::pow(long long e) const {
  Permutation base = e < 0 ? inverse() : *this;
  unsigned long long n = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  Permutation r(degree());
  while (n) {
    if (n & 1)
      r *= base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

Permutation Permutation::conjugate(const Permutation &h) const { return h.inverse() * *this * h; }

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i)
      return false;
  return true;
}

BigInt Permutation::order() const {
  BigInt o = 1;
  std::vector<bool> seen(img_.size(), false);
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i])
      continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = img_[j]) {
      seen[j] = true;
      ++len;
    }
    o = boost::multiprecision::lcm(o, BigInt(len));
  }
  return o;
}

std::uint64_t Permutation::small_order() const {
  BigInt o = order();
  if (o > BigInt(std::numeric_limits<std::uint64_t>::max()))
    fail(ErrorKind::resource_limit, "element order exceeds 64 bits");
  return static_cast<std::uint64_t>(o);
}

std::string Permutation::to_cycles() const {
  std::ostringstream os;
  std::vector<bool> seen(img_.size(), false);
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i] || img_[i] == i)
      continue;
    os << '(';
    for (std::size_t j = i; !seen[j]; j = img_[j]) {
      seen[j] = true;
      os << (j == i ? "" : ",") << j + 1;
    }
    os << ')';
  }
  std::string s = os.str();
  return s.empty() ? "()" : s;
}

std::size_t PermutationHash::operator()(const Permutation &p) const {
  std::uint64_t h = 1469598103934665603ULL;
  for (Point x : p.images()) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------
// Stabilizer chains

std::vector<Point> StabChain::base() const {
  std::vector<Point> b;
  for (const auto &l : levels_)
    b.push_back(l.base);
  return b;
}

BigInt StabChain::order() const {
  BigInt o = 1;
  for (const auto &l : levels_)
    o *= l.orbit.size();
  return o;
}

bool StabChain::in_orbit(std::size_t level, Point p) const {
  return levels_[level].pos[p] != kAbsent;
}

Permutation StabChain::transversal(std::size_t level, Point p) const {
  const ChainLevel &L = levels_[level];
  if (!L.uinv.empty())
    return L.uinv[L.pos[p]].inverse();
  Permutation g(degree_);
  strip(level, p, g);
  return g.inverse();
}

void StabChain::strip(std::size_t level, Point p, Permutation &g) const {
  const ChainLevel &L = levels_[level];
  if (!L.uinv.empty()) {
    g *= L.uinv[L.pos[p]];
    return;
  }
  while (L.tree[p] >= 0) {
    const Permutation &sinv = strong_inv_[static_cast<std::size_t>(L.tree[p])];
    g *= sinv;
    p = sinv[p];
  }
}

StabChain::SiftResult StabChain::sift(Permutation g, std::size_t from) const {
  for (std::size_t i = from; i < levels_.size(); ++i) {
    Point y = g[levels_[i].base];
    if (levels_[i].pos[y] == kAbsent)
      return {std::move(g), i};
    strip(i, y, g);
  }
  return {std::move(g), levels_.size()};
}

bool StabChain::contains(const Permutation &g) const {
  if (g.degree() != degree_)
    return false;
  auto r = sift(g);
  return r.depth == levels_.size() && r.residue.is_identity();
}

std::vector<Permutation> StabChain::level_generators(std::size_t k) const {
  std::vector<Permutation> out;
  if (k < levels_.size())
    for (auto i : levels_[k].gens)
      out.push_back(strong_[i]);
  return out;
}

StabChain StabChain::tail(std::size_t k) const {
  StabChain t(degree_);
  if (k >= levels_.size())
    return t;
  std::unordered_map<std::uint32_t, std::uint32_t> remap;
  for (auto i : levels_[k].gens) {
    remap[i] = static_cast<std::uint32_t>(t.strong_.size());
    t.strong_.push_back(strong_[i]);
    t.strong_inv_.push_back(strong_inv_[i]);
  }
  for (std::size_t i = k; i < levels_.size(); ++i) {
    ChainLevel L = levels_[i];
    for (auto &g : L.gens)
      g = remap.at(g);
    for (auto &e : L.tree)
      if (e >= 0)
        e = static_cast<std::int32_t>(remap.at(static_cast<std::uint32_t>(e)));
    t.levels_.push_back(std::move(L));
  }
  return t;
}

void StabChain::rebuild_orbit(std::size_t i) {
  ChainLevel &L = levels_[i];
  L.uinv.clear();
  L.tree.assign(degree_, -2);
  L.pos.assign(degree_, kAbsent);
  L.orbit.clear();
  L.orbit.push_back(L.base);
  L.tree[L.base] = -1;
  L.pos[L.base] = 0;
  for (std::size_t head = 0; head < L.orbit.size(); ++head) {
    Point x = L.orbit[head];
    for (auto s : L.gens) {
      Point y = strong_[s][x];
      if (L.pos[y] == kAbsent) {
        L.pos[y] = static_cast<std::uint32_t>(L.orbit.size());
        L.tree[y] = static_cast<std::int32_t>(s);
        L.orbit.push_back(y);
      }
    }
  }
}

void StabChain::cache_level(std::size_t i) {
  ChainLevel &L = levels_[i];
  if (!L.uinv.empty())
    return;
  std::vector<Permutation> cache(L.orbit.size());
  // Breadth-first order guarantees the parent of each point is cached first.
  cache[0] = Permutation(degree_);
  for (std::size_t k = 1; k < L.orbit.size(); ++k) {
    Point y = L.orbit[k];
    auto s = static_cast<std::size_t>(L.tree[y]);
    Point x = strong_inv_[s][y];
    cache[k] = strong_inv_[s] * cache[L.pos[x]];
  }
  L.uinv = std::move(cache);
}

void StabChain::cache_transversals(std::size_t from) {
  // Deep levels have small orbits, so caching proceeds upwards while the
  // total stays within budget.
  constexpr std::size_t kBudget = std::size_t{1} << 25;
  std::size_t total = 0;
  for (std::size_t i = levels_.size(); i-- > from;) {
    total += levels_[i].orbit.size() * degree_;
    if (total > kBudget)
      return;
    cache_level(i);
  }
}

class ChainBuilder {
public:
  ChainBuilder(std::size_t degree, const std::vector<Permutation> &gens, const ChainOptions &opts)
      : c_(degree), gens_(gens), opts_(opts) {
    std::vector<bool> used(degree, false);
    for (Point b : opts.base_prefix) {
      if (b >= degree)
        fail(ErrorKind::invalid_argument, "base point exceeds the degree");
      if (used[b])
        continue;
      used[b] = true;
      new_level(b);
    }
  }

  StabChain run() {
    for (const auto &g : gens_)
      if (g.degree() != c_.degree_)
        fail(ErrorKind::invalid_argument, "generator degree mismatch");
    if (c_.levels_.empty())
      seed_first_base();
    for (const auto &g : gens_)
      add(g);
    random_phase();
    const auto &known = opts_.known_order;
    if (!known || c_.order() != *known || verification_affordable())
      complete();
    if (known && c_.order() != *known)
      fail(ErrorKind::invalid_argument,
           "generators do not generate a group of the stated order " + known->str() + " (got " +
               c_.order().str() + ")");
    c_.cache_transversals(0);
    return std::move(c_);
  }

private:
  // Schreier generators times sift cost; large chains with a known order
  // rely on the order alone.
  bool verification_affordable() const {
    double cost = 0;
    for (const auto &L : c_.levels_)
      cost += double(L.orbit.size()) * double(L.gens.size());
    cost *= double(c_.levels_.size()) * double(c_.degree_);
    return cost <= 2e8;
  }

  void new_level(Point b) {
    ChainLevel L;
    L.base = b;
    c_.levels_.push_back(std::move(L));
    c_.rebuild_orbit(c_.levels_.size() - 1);
  }

  void seed_first_base() {
    const std::size_t n = c_.degree_;
    std::vector<std::uint32_t> comp(n, kAbsent);
    std::size_t best_size = 0;
    Point best = 0;
    for (Point p = 0; p < n; ++p) {
      if (comp[p] != kAbsent)
        continue;
      std::vector<Point> orb{p};
      comp[p] = p;
      for (std::size_t h = 0; h < orb.size(); ++h)
        for (const auto &g : gens_) {
          Point y = g[orb[h]];
          if (comp[y] == kAbsent) {
            comp[y] = p;
            orb.push_back(y);
          }
        }
      if (orb.size() > 1 && (best_size == 0 || orb.size() < best_size)) {
        best_size = orb.size();
        best = *std::min_element(orb.begin(), orb.end());
      }
    }
    if (best_size)
      new_level(best);
  }

  Point choose_base_point(const Permutation &h) const {
    std::size_t best_len = 0;
    Point best = 0;
    std::vector<bool> seen(h.degree(), false);
    for (Point p = 0; p < h.degree(); ++p) {
      if (seen[p] || h[p] == p)
        continue;
      std::size_t len = 0;
      for (Point q = p; !seen[q]; q = h[q]) {
        seen[q] = true;
        ++len;
      }
      if (best_len == 0 || len < best_len) {
        best_len = len;
        best = p;
      }
    }
    return best;
  }

  void insert(const Permutation &h, std::size_t depth) {
    if (depth == c_.levels_.size())
      new_level(choose_base_point(h));
    auto idx = static_cast<std::uint32_t>(c_.strong_.size());
    c_.strong_.push_back(h);
    c_.strong_inv_.push_back(h.inverse());
    for (std::size_t i = 0; i <= depth; ++i) {
      c_.levels_[i].gens.push_back(idx);
      c_.rebuild_orbit(i);
    }
  }

  bool add(const Permutation &g) {
    auto r = c_.sift(g);
    if (r.depth == c_.levels_.size() && r.residue.is_identity())
      return false;
    insert(r.residue, r.depth);
    return true;
  }

  void random_phase() {
    if (gens_.empty())
      return;
    std::mt19937_64 rng(opts_.seed ? opts_.seed : default_seed());
    const std::size_t n = std::max<std::size_t>(10, gens_.size() + 1);
    std::vector<Permutation> state;
    for (std::size_t i = 0; i < n; ++i)
      state.push_back(gens_[i % gens_.size()]);
    Permutation acc(c_.degree_);
    auto step = [&] {
      std::size_t i = rng() % n, j = rng() % (n - 1);
      if (j >= i)
        ++j;
      state[i] = (rng() & 1) ? state[i] * state[j] : state[i] * state[j].inverse();
      acc = (rng() & 1) ? acc * state[i] : state[i] * acc;
      return acc;
    };
    for (int i = 0; i < 40; ++i)
      step();
    const auto &known = opts_.known_order;
    const std::size_t needed = known ? 64 : 24;
    std::size_t successes = 0;
    while (successes < needed) {
      if (known) {
        BigInt o = c_.order();
        if (o == *known)
          return;
        if (o > *known)
          fail(ErrorKind::invalid_argument, "group is larger than the stated order");
      }
      if (add(step()))
        successes = 0;
      else
        ++successes;
    }
  }

  // Sifts every Schreier generator, level by level from the bottom. At level
  // 0 the input generators suffice; deeper levels use their strong generators.
  void complete() {
    std::vector<Permutation> gens;
    std::vector<std::int32_t> labels;
    for (std::size_t i = c_.levels_.size(); i-- > 0;) {
      c_.cache_transversals(i + 1);
      gens.clear();
      labels.clear();
      if (i == 0) {
        gens = gens_;
        labels.assign(gens.size(), -1);
      } else {
        for (auto s : c_.levels_[i].gens) {
          gens.push_back(c_.strong_[s]);
          labels.push_back(static_cast<std::int32_t>(s));
        }
      }
      bool restarted = false;
      const std::size_t orbit_len = c_.levels_[i].orbit.size();
      for (std::size_t oi = 0; oi < orbit_len && !restarted; ++oi) {
        const ChainLevel &Li = c_.levels_[i];
        Point x = Li.orbit[oi];
        Permutation ux = c_.transversal(i, x);
        for (std::size_t k = 0; k < gens.size(); ++k) {
          const Permutation &g = gens[k];
          Point y = g[x];
          // Tree edges give trivial Schreier generators.
          if (labels[k] >= 0 && Li.tree[y] == labels[k] && Li.pos[x] < Li.pos[y])
            continue;
          Permutation t = ux * g;
          c_.strip(i, y, t);
          auto r = c_.sift(std::move(t), i + 1);
          if (r.depth == c_.levels_.size() && r.residue.is_identity())
            continue;
          insert(r.residue, r.depth);
          i = r.depth + 1;
          restarted = true;
          break;
        }
      }
    }
  }

  StabChain c_;
  std::vector<Permutation> gens_;
  ChainOptions opts_;
};

StabChain build_chain(std::size_t degree, const std::vector<Permutation> &gens,
                      const ChainOptions &opts) {
  std::vector<Permutation> nontrivial;
  for (const auto &g : gens)
    if (!g.is_identity())
      nontrivial.push_back(g);
  return ChainBuilder(degree, nontrivial, opts).run();
}

// ---------------------------------------------------------------------------
// Group handles

GroupHandle::GroupHandle(std::size_t degree, std::vector<Permutation> gens)
    : degree_(degree), gens_(std::move(gens)), lazy_(std::make_shared<Lazy>()) {
  for (const auto &g : gens_)
    if (g.degree() != degree_)
      fail(ErrorKind::invalid_argument, "generator degree does not match the group degree");
}

const StabChain &GroupHandle::chain() const {
  std::lock_guard<std::mutex> lock(lazy_->mu);
  if (!lazy_->chain) {
    ChainOptions opts;
    opts.known_order = hint_;
    lazy_->chain = std::make_shared<const StabChain>(build_chain(degree_, gens_, opts));
  }
  return *lazy_->chain;
}

void GroupHandle::set_order_hint(const BigInt &order) { hint_ = order; }

void GroupHandle::adopt_chain(StabChain chain) {
  std::lock_guard<std::mutex> lock(lazy_->mu);
  lazy_->chain = std::make_shared<const StabChain>(std::move(chain));
}

std::string GroupHandle::to_string() const {
  std::ostringstream os;
  os << "Group(degree " << degree_ << "; ";
  for (std::size_t i = 0; i < gens_.size(); ++i)
    os << (i ? ", " : "") << gens_[i].to_cycles();
  os << ")";
  return os.str();
}

GroupHandle trivial_group(std::size_t degree) { return GroupHandle(degree, {}); }

GroupHandle subgroup(const GroupHandle &G, std::vector<Permutation> gens) {
  return GroupHandle(G.degree(), std::move(gens));
}

bool is_subgroup(const GroupHandle &H, const GroupHandle &G) {
  if (H.degree() != G.degree())
    return false;
  for (const auto &g : H.generators())
    if (!G.contains(g))
      return false;
  return true;
}

bool same_group(const GroupHandle &A, const GroupHandle &B) {
  return A.degree() == B.degree() && A.order() == B.order() && is_subgroup(A, B);
}

GroupHandle conjugate(const GroupHandle &H, const Permutation &g) {
  std::vector<Permutation> gens;
  Permutation gi = g.inverse();
  for (const auto &h : H.generators())
    gens.push_back(gi * h * g);
  GroupHandle out(H.degree(), std::move(gens));
  out.set_order_hint(H.order());
  return out;
}

std::vector<Point> orbit(const GroupHandle &G, Point p) {
  std::vector<Point> orb{p};
  std::vector<bool> seen(G.degree(), false);
  seen[p] = true;
  for (std::size_t h = 0; h < orb.size(); ++h)
    for (const auto &g : G.generators()) {
      Point y = g[orb[h]];
      if (!seen[y]) {
        seen[y] = true;
        orb.push_back(y);
      }
    }
  return orb;
}

std::vector<std::vector<Point>> orbits(const GroupHandle &G) {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(G.degree(), false);
  for (Point p = 0; p < G.degree(); ++p) {
    if (seen[p])
      continue;
    auto o = orbit(G, p);
    for (Point x : o)
      seen[x] = true;
    out.push_back(std::move(o));
  }
  return out;
}

bool is_transitive(const GroupHandle &G) {
  return G.degree() <= 1 || orbit(G, 0).size() == G.degree();
}

StabChain chain_with_base(const GroupHandle &G, const std::vector<Point> &prefix) {
  ChainOptions opts;
  opts.known_order = G.order();
  opts.base_prefix = prefix;
  return build_chain(G.degree(), G.generators(), opts);
}

namespace {

std::vector<Point> distinct(const std::vector<Point> &pts) {
  std::vector<Point> out;
  for (Point p : pts)
    if (std::find(out.begin(), out.end(), p) == out.end())
      out.push_back(p);
  return out;
}

} // namespace

GroupHandle pointwise_stabilizer(const GroupHandle &G, const std::vector<Point> &points) {
  for (Point p : points)
    if (p >= G.degree())
      fail(ErrorKind::invalid_argument, "point exceeds the degree");
  auto d = distinct(points);
  StabChain c = chain_with_base(G, d);
  StabChain t = c.tail(d.size());
  GroupHandle S(G.degree(), c.level_generators(d.size()));
  S.set_order_hint(t.order());
  S.adopt_chain(std::move(t));
  return S;
}

std::optional<Permutation> transporter(const GroupHandle &G, const std::vector<Point> &a,
                                       const std::vector<Point> &b) {
  if (a.size() != b.size())
    fail(ErrorKind::invalid_argument, "transporter tuples differ in length");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] >= G.degree() || b[i] >= G.degree())
      fail(ErrorKind::invalid_argument, "point exceeds the degree");
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if ((a[i] == a[j]) != (b[i] == b[j]))
        return std::nullopt;
  auto d = distinct(a);
  std::vector<Point> target;
  for (Point p : d)
    target.push_back(b[static_cast<std::size_t>(std::find(a.begin(), a.end(), p) - a.begin())]);
  StabChain c = chain_with_base(G, d);
  Permutation t(G.degree()), inv(G.degree());
  for (std::size_t i = 0; i < d.size(); ++i) {
    Point y = inv[target[i]];
    if (!c.in_orbit(i, y))
      return std::nullopt;
    Permutation u = c.transversal(i, y);
    t = u * t;
    inv *= u.inverse();
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    if (t[a[i]] != b[i])
      return std::nullopt;
  return t;
}

Permutation random_element(const GroupHandle &G, std::mt19937_64 &rng) {
  const StabChain &c = G.chain();
  Permutation g(G.degree());
  for (std::size_t i = c.depth(); i-- > 0;) {
    const auto &orb = c.level(i).orbit;
    g *= c.transversal(i, orb[rng() % orb.size()]);
  }
  return g;
}

namespace {

std::vector<Permutation> enumerate_chain(const StabChain &c) {
  std::vector<Permutation> cur{Permutation(c.degree())};
  for (std::size_t i = c.depth(); i-- > 0;) {
    const auto &orb = c.level(i).orbit;
    std::vector<Permutation> us;
    for (Point y : orb)
      us.push_back(c.transversal(i, y));
    std::vector<Permutation> next;
    next.reserve(cur.size() * orb.size());
    for (const auto &x : cur)
      for (const auto &u : us)
        next.push_back(x * u);
    cur = std::move(next);
  }
  return cur;
}

} // namespace

std::vector<Permutation> elements(const GroupHandle &G, std::uint64_t cap) {
  if (G.order() > cap)
    fail(ErrorKind::resource_limit, "group order " + G.order().str() + " exceeds element cap");
  return enumerate_chain(G.chain());
}

ElementIndex::ElementIndex(const GroupHandle &G, std::uint64_t cap) : chain_(G.chain()) {
  if (G.order() > cap)
    fail(ErrorKind::resource_limit, "group order " + G.order().str() + " exceeds element cap");
  elems_ = enumerate_chain(chain_);
  stride_.resize(chain_.depth());
  std::size_t s = 1;
  for (std::size_t i = 0; i < chain_.depth(); ++i) {
    stride_[i] = s;
    s *= chain_.level(i).orbit.size();
  }
  base_ = chain_.base();
  id_ = rank(Permutation(G.degree()));
}

std::size_t ElementIndex::rank_of_base_images(std::vector<Point> &images) const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < chain_.depth(); ++i) {
    const ChainLevel &L = chain_.level(i);
    const Point y = images[i];
    r += L.pos[y] * stride_[i];
    if (L.uinv.empty()) {
      Permutation u(chain_.degree());
      chain_.strip(i, y, u);
      for (std::size_t j = i + 1; j < images.size(); ++j)
        images[j] = u[images[j]];
    } else {
      const Permutation &u = L.uinv[L.pos[y]];
      for (std::size_t j = i + 1; j < images.size(); ++j)
        images[j] = u[images[j]];
    }
  }
  return r;
}

std::size_t ElementIndex::rank(const Permutation &g) const {
  Permutation h = g;
  std::size_t r = 0;
  for (std::size_t i = 0; i < chain_.depth(); ++i) {
    const ChainLevel &L = chain_.level(i);
    Point y = h[L.base];
    if (L.pos[y] == kAbsent)
      fail(ErrorKind::invalid_argument, "element is not in the indexed group");
    r += L.pos[y] * stride_[i];
    chain_.strip(i, y, h);
  }
  if (!h.is_identity())
    fail(ErrorKind::invalid_argument, "element is not in the indexed group");
  return r;
}

// ---------------------------------------------------------------------------
// Actions

struct ActionMap::Canon {
  StabChain hchain;
  std::vector<Point> gbase;
  std::unordered_map<std::string, Point> index;

  std::string key(const Permutation &x) const {
    Permutation cur = x;
    for (std::size_t i = 0; i < hchain.depth(); ++i) {
      const auto &orb = hchain.level(i).orbit;
      if (orb.size() == 1)
        continue;
      Point best = orb[0];
      for (Point y : orb)
        if (cur[y] < cur[best])
          best = y;
      if (best != hchain.level(i).base)
        cur = hchain.transversal(i, best) * cur;
    }
    std::string k(gbase.size() * sizeof(Point), '\0');
    for (std::size_t i = 0; i < gbase.size(); ++i) {
      Point v = cur[gbase[i]];
      std::memcpy(&k[i * sizeof(Point)], &v, sizeof(Point));
    }
    return k;
  }
};

Point ActionMap::point_of(const Permutation &g) const {
  auto it = canon->index.find(canon->key(g));
  if (it == canon->index.end())
    fail(ErrorKind::invalid_argument, "element is not in the acting group");
  return it->second;
}

Permutation ActionMap::image_of(const Permutation &g) const {
  std::vector<Point> img(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i)
    img[i] = point_of(reps[i] * g);
  return Permutation(std::move(img));
}

ActionMap coset_action(const GroupHandle &G, const GroupHandle &H, std::uint64_t cap) {
  if (!is_subgroup(H, G))
    fail(ErrorKind::precondition_violation, "coset_action: H is not a subgroup of G");
  BigInt index = G.order() / H.order();
  if (index > cap)
    fail(ErrorKind::resource_limit, "coset action index " + index.str() + " exceeds cap");
  const auto n = static_cast<std::size_t>(index);
  auto canon = std::make_shared<ActionMap::Canon>();
  canon->gbase = G.chain().base();
  ChainOptions opts;
  opts.known_order = H.order();
  opts.base_prefix = canon->gbase;
  canon->hchain = build_chain(G.degree(), H.generators(), opts);
  std::vector<Permutation> reps{Permutation(G.degree())};
  canon->index.emplace(canon->key(reps[0]), 0);
  const auto &gens = G.generators();
  std::vector<std::vector<Point>> img(gens.size(), std::vector<Point>(n, 0));
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t s = 0; s < gens.size(); ++s) {
      Permutation x = reps[i] * gens[s];
      auto [it, fresh] = canon->index.emplace(canon->key(x), static_cast<Point>(reps.size()));
      if (fresh) {
        if (reps.size() >= n)
          fail(ErrorKind::invalid_argument, "coset enumeration exceeded the index");
        reps.push_back(std::move(x));
      }
      img[s][i] = it->second;
    }
  if (reps.size() != n)
    fail(ErrorKind::invalid_argument, "coset enumeration did not reach the index");
  std::vector<Permutation> pgens;
  for (auto &v : img)
    pgens.emplace_back(std::move(v));
  ActionMap out;
  out.source = G;
  out.image = GroupHandle(n, std::move(pgens));
  out.reps = std::move(reps);
  out.canon = canon;
  return out;
}

GroupHandle action_on_blocks(const GroupHandle &G, const std::vector<std::vector<Point>> &blocks) {
  std::vector<std::uint32_t> which(G.degree(), kAbsent);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (Point p : blocks[b])
      which[p] = static_cast<std::uint32_t>(b);
  std::vector<Permutation> gens;
  for (const auto &g : G.generators()) {
    std::vector<Point> img(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b)
      img[b] = which[g[blocks[b][0]]];
    gens.emplace_back(std::move(img));
  }
  return GroupHandle(blocks.size(), std::move(gens));
}

namespace {

/// G acting on its points followed by the blocks; stabilizers of block points
/// are then ordinary point stabilizers.
GroupHandle with_block_points(const GroupHandle &G, const std::vector<std::vector<Point>> &blocks) {
  const std::size_t n = G.degree();
  std::vector<std::uint32_t> owner(n, kAbsent);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (Point p : blocks[b])
      owner[p] = static_cast<std::uint32_t>(b);
  for (auto o : owner)
    if (o == kAbsent)
      fail(ErrorKind::invalid_argument, "blocks must cover every point");
  std::vector<Permutation> gens;
  for (const auto &g : G.generators()) {
    std::vector<Point> img(n + blocks.size());
    for (Point p = 0; p < n; ++p)
      img[p] = g[p];
    for (std::size_t b = 0; b < blocks.size(); ++b)
      img[n + b] = static_cast<Point>(n + owner[g[blocks[b][0]]]);
    gens.emplace_back(std::move(img));
  }
  GroupHandle X(n + blocks.size(), std::move(gens));
  X.set_order_hint(G.order());
  return X;
}

GroupHandle project(const GroupHandle &S, std::size_t n) {
  std::vector<Permutation> proj;
  for (const auto &s : S.generators())
    proj.emplace_back(std::vector<Point>(s.images().begin(),
                                         s.images().begin() + static_cast<std::ptrdiff_t>(n)));
  GroupHandle out(n, std::move(proj));
  out.set_order_hint(S.order());
  return out;
}

} // namespace

GroupHandle block_stabilizer(const GroupHandle &G, const std::vector<std::vector<Point>> &blocks,
                             std::size_t which) {
  GroupHandle X = with_block_points(G, blocks);
  return project(pointwise_stabilizer(X, {static_cast<Point>(G.degree() + which)}), G.degree());
}

GroupHandle block_kernel(const GroupHandle &G, const std::vector<std::vector<Point>> &blocks) {
  GroupHandle X = with_block_points(G, blocks);
  std::vector<Point> pts;
  for (std::size_t b = 0; b < blocks.size(); ++b)
    pts.push_back(static_cast<Point>(G.degree() + b));
  return project(pointwise_stabilizer(X, pts), G.degree());
}

GroupHandle restrict_to_orbit(const GroupHandle &G, const std::vector<Point> &pts) {
  std::vector<std::uint32_t> label(G.degree(), kAbsent);
  for (std::size_t i = 0; i < pts.size(); ++i)
    label[pts[i]] = static_cast<std::uint32_t>(i);
  std::vector<Permutation> gens;
  for (const auto &g : G.generators()) {
    std::vector<Point> img(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      auto l = label[g[pts[i]]];
      if (l == kAbsent)
        fail(ErrorKind::invalid_argument, "point set is not invariant");
      img[i] = l;
    }
    gens.emplace_back(std::move(img));
  }
  return GroupHandle(pts.size(), std::move(gens));
}

namespace {

struct UnionFind {
  std::vector<Point> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), Point{0}); }
  Point find(Point x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(Point a, Point b) {
    a = find(a);
    b = find(b);
    if (a == b)
      return false;
    if (a > b)
      std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

std::vector<std::vector<Point>> block_system_from(const GroupHandle &G, Point x) {
  const std::size_t n = G.degree();
  UnionFind uf(n);
  std::vector<std::pair<Point, Point>> queue;
  uf.unite(0, x);
  queue.emplace_back(0, x);
  while (!queue.empty()) {
    auto [a, b] = queue.back();
    queue.pop_back();
    for (const auto &g : G.generators()) {
      Point c = uf.find(g[a]), d = uf.find(g[b]);
      if (uf.unite(c, d))
        queue.emplace_back(c, d);
    }
  }
  std::unordered_map<Point, std::size_t> id;
  std::vector<std::vector<Point>> blocks;
  for (Point p = 0; p < n; ++p) {
    Point r = uf.find(p);
    auto [it, fresh] = id.emplace(r, blocks.size());
    if (fresh)
      blocks.emplace_back();
    blocks[it->second].push_back(p);
  }
  return blocks;
}

} // namespace

std::vector<Point> minimal_block(const GroupHandle &G, Point x) {
  if (!is_transitive(G))
    fail(ErrorKind::precondition_violation, "minimal_block needs a transitive group");
  return block_system_from(G, x).front();
}

Primitivity is_primitive(const GroupHandle &G) {
  if (!is_transitive(G))
    fail(ErrorKind::precondition_violation, "is_primitive needs a transitive group");
  const std::size_t n = G.degree();
  Primitivity out;
  if (n <= 2)
    return out;
  std::vector<std::vector<Point>> best;
  for (Point x = 1; x < n; ++x) {
    auto sys = block_system_from(G, x);
    if (sys.size() > 1 && (best.empty() || sys.size() > best.size()))
      best = std::move(sys);
  }
  if (best.empty())
    return out;
  out.primitive = false;
  for (;;) {
    GroupHandle Y = action_on_blocks(G, best);
    Primitivity up = is_primitive(Y);
    if (up.primitive)
      break;
    std::vector<std::vector<Point>> merged;
    for (const auto &meta : up.blocks) {
      std::vector<Point> b;
      for (Point i : meta)
        b.insert(b.end(), best[i].begin(), best[i].end());
      std::sort(b.begin(), b.end());
      merged.push_back(std::move(b));
    }
    std::sort(merged.begin(), merged.end());
    best = std::move(merged);
  }
  out.blocks = std::move(best);
  return out;
}

// ---------------------------------------------------------------------------
// Series

GroupHandle normal_closure(const GroupHandle &G, const std::vector<Permutation> &gens) {
  // Only elements outside the group built so far are kept, so the
  // generating set stays short even for long input lists.
  std::vector<Permutation> ngens;
  StabChain c = build_chain(G.degree(), {});
  for (const auto &g : gens)
    if (!c.contains(g)) {
      ngens.push_back(g);
      c = build_chain(G.degree(), ngens);
    }
  for (std::size_t i = 0; i < ngens.size(); ++i)
    for (const auto &g : G.generators()) {
      Permutation x = ngens[i].conjugate(g);
      if (!c.contains(x)) {
        ngens.push_back(x);
        c = build_chain(G.degree(), ngens);
      }
    }
  GroupHandle N(G.degree(), ngens);
  N.adopt_chain(std::move(c));
  return N;
}

GroupHandle derived_subgroup(const GroupHandle &G) {
  std::vector<Permutation> comms;
  const auto &gens = G.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Permutation c = gens[i].inverse() * gens[j].inverse() * gens[i] * gens[j];
      if (!c.is_identity())
        comms.push_back(c);
    }
  return normal_closure(G, comms);
}

std::vector<GroupHandle> derived_series(const GroupHandle &G) {
  std::vector<GroupHandle> out{G};
  for (;;) {
    GroupHandle D = derived_subgroup(out.back());
    if (D.order() == out.back().order())
      return out;
    out.push_back(D);
  }
}

GroupHandle perfect_residual(const GroupHandle &G) { return derived_series(G).back(); }

bool is_soluble(const GroupHandle &G) { return perfect_residual(G).order() == 1; }

bool is_normal(const GroupHandle &G, const GroupHandle &N) {
  if (!is_subgroup(N, G))
    return false;
  for (const auto &n : N.generators())
    for (const auto &g : G.generators())
      if (!N.contains(n.conjugate(g)))
        return false;
  return true;
}

std::vector<std::vector<std::size_t>> conjugacy_classes(const ElementIndex &idx,
                                                        const GroupHandle &G) {
  std::vector<bool> seen(idx.size(), false);
  std::vector<std::vector<std::size_t>> out;
  std::vector<Permutation> ginv;
  for (const auto &g : G.generators())
    ginv.push_back(g.inverse());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    if (seen[r])
      continue;
    std::vector<std::size_t> cls{r};
    seen[r] = true;
    for (std::size_t h = 0; h < cls.size(); ++h) {
      const Permutation &x = idx[cls[h]];
      for (std::size_t s = 0; s < ginv.size(); ++s) {
        std::size_t y = idx.rank(ginv[s] * x * G.generators()[s]);
        if (!seen[y]) {
          seen[y] = true;
          cls.push_back(y);
        }
      }
    }
    out.push_back(std::move(cls));
  }
  return out;
}

GroupHandle soluble_radical(const GroupHandle &G, std::uint64_t cap) {
  if (G.order() > cap)
    fail(ErrorKind::resource_limit, "soluble_radical: group order exceeds cap");
  if (is_soluble(G))
    return G;
  ElementIndex idx(G, cap);
  auto classes = conjugacy_classes(idx, G);
  std::vector<Permutation> rgens;
  GroupHandle R = trivial_group(G.degree());
  for (const auto &cls : classes) {
    const Permutation &x = idx[cls.front()];
    if (R.contains(x))
      continue;
    auto fac = numth::factorize(x.order());
    if (fac.size() != 1)
      continue;
    auto trial = rgens;
    trial.push_back(x);
    GroupHandle N = normal_closure(G, trial);
    if (is_soluble(N)) {
      rgens = N.generators();
      R = N;
    }
  }
  return R;
}

GroupHandle centre(const GroupHandle &G, std::uint64_t cap) {
  std::vector<Permutation> z;
  for (const auto &x : elements(G, cap)) {
    bool central = true;
    for (const auto &g : G.generators())
      if (x * g != g * x) {
        central = false;
        break;
      }
    if (central && !x.is_identity())
      z.push_back(x);
  }
  return GroupHandle(G.degree(), z);
}

} // namespace cgt::perm
