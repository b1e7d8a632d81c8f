#include "cgt/digraph.hpp"

#include <unordered_set>

#include "cgt/error.hpp"
#include "cgt/subgroups.hpp"

namespace cgt::digraph {

CosetDigraph coset_digraph(const GroupHandle &G, const GroupHandle &H, const Permutation &g,
                           std::uint64_t cap) {
  if (!perm::is_subgroup(H, G))
    fail(ErrorKind::precondition_violation, "coset_digraph: H is not a subgroup of G");
  if (H.order() == G.order())
    fail(ErrorKind::precondition_violation, "coset_digraph: H must be a proper subgroup");
  if (!G.contains(g))
    fail(ErrorKind::precondition_violation, "coset_digraph: g is not in G");
  if (H.contains(g))
    fail(ErrorKind::loop, "coset_digraph: g lies in H, so H -> H would be a loop");

  CosetDigraph D;
  D.G = G;
  D.H = H;
  D.g = g;
  D.action = perm::coset_action(G, H, cap);
  const std::size_t n = D.action.image.degree();
  D.head = D.action.point_of(g);

  // Out-neighbours of H are the cosets in HgH, the H-orbit of Hg.
  std::vector<Permutation> hgens;
  for (const auto &h : H.generators())
    hgens.push_back(D.action.image_of(h));
  std::vector<Point> first{D.head};
  std::vector<char> seen(n, 0);
  seen[D.head] = 1;
  for (std::size_t i = 0; i < first.size(); ++i)
    for (const auto &h : hgens) {
      Point y = h[first[i]];
      if (!seen[y]) {
        seen[y] = 1;
        first.push_back(y);
      }
    }
  if (seen[D.action.point_of(g.inverse())])
    fail(ErrorKind::not_antisymmetric,
         "coset_digraph: g^-1 lies in HgH, so the relation is symmetric");

  D.out.resize(n);
  D.out[0] = first;
  for (Point x = 1; x < n; ++x) {
    Permutation r = D.action.image_of(D.action.reps[x]);
    D.out[x].reserve(first.size());
    for (Point y : first)
      D.out[x].push_back(r[y]);
  }
  return D;
}

std::uint64_t valency(const CosetDigraph &D) { return D.out.empty() ? 0 : D.out[0].size(); }

bool is_connected(const CosetDigraph &D) {
  auto gens = D.H.generators();
  gens.push_back(D.g);
  return perm::subgroup(D.G, gens).order() == D.G.order();
}

GroupHandle ArcChain::stabilizer(std::size_t a, std::size_t b) const {
  std::vector<Point> pts(points.begin() + static_cast<std::ptrdiff_t>(a),
                         points.begin() + static_cast<std::ptrdiff_t>(b) + 1);
  return perm::pointwise_stabilizer(group, pts);
}

ArcChain base_arc_chain(const CosetDigraph &D, std::size_t s) {
  ArcChain c;
  c.group = D.group();
  Permutation step = D.action.image_of(D.g);
  Point v = 0;
  for (std::size_t i = 0; i <= s; ++i) {
    c.points.push_back(v);
    v = step[v];
  }
  return c;
}

std::size_t max_s_by_criterion(const CosetDigraph &D, std::size_t cap) {
  if (cap <= 1)
    return cap;
  auto chain = base_arc_chain(D, cap);
  for (std::size_t i = 1; i + 1 <= cap; ++i) {
    BigInt lhs = chain.stabilizer(1, i).order() * chain.stabilizer(0, i + 1).order();
    BigInt rhs = chain.stabilizer(0, i).order() * chain.stabilizer(1, i + 1).order();
    if (lhs != rhs)
      return i;
  }
  return cap;
}

namespace {

struct TupleHash {
  std::size_t operator()(const std::vector<Point> &t) const {
    std::size_t h = 1469598103934665603ULL;
    for (Point x : t)
      h = (h ^ x) * 1099511628211ULL;
    return h;
  }
};

std::uint64_t count_walks(const CosetDigraph &D, std::size_t s) {
  std::uint64_t count = 0;
  std::vector<std::pair<Point, std::size_t>> stack;
  for (Point v = 0; v < D.vertices(); ++v)
    stack.push_back({v, 0});
  while (!stack.empty()) {
    auto [v, depth] = stack.back();
    stack.pop_back();
    if (depth == s) {
      ++count;
      continue;
    }
    for (Point w : D.out[v])
      stack.push_back({w, depth + 1});
  }
  return count;
}

std::uint64_t orbit_size(const std::vector<Permutation> &gens, const std::vector<Point> &start) {
  std::unordered_set<std::vector<Point>, TupleHash> seen{start};
  std::vector<std::vector<Point>> queue{start};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto &g : gens) {
      std::vector<Point> img(queue[i].size());
      for (std::size_t j = 0; j < img.size(); ++j)
        img[j] = g[queue[i][j]];
      if (seen.insert(img).second)
        queue.push_back(std::move(img));
    }
  return queue.size();
}

} // namespace

std::size_t max_s_by_orbits(const CosetDigraph &D, std::size_t cap, std::uint64_t arc_cap) {
  auto chain = base_arc_chain(D, cap);
  const auto &gens = D.group().generators();
  const BigInt n = D.vertices();
  const BigInt gamma = valency(D);
  for (std::size_t s = 1; s <= cap; ++s) {
    if (n * numth::ipow(gamma, unsigned(s)) > arc_cap)
      fail(ErrorKind::resource_limit, "max_s_by_orbits: more than " + std::to_string(arc_cap) +
                                          " " + std::to_string(s) + "-arcs");
    std::vector<Point> base(chain.points.begin(),
                            chain.points.begin() + static_cast<std::ptrdiff_t>(s) + 1);
    if (orbit_size(gens, base) != count_walks(D, s))
      return s - 1;
  }
  return cap;
}

SelfPairing is_self_paired(const GroupHandle &G, Point u, Point v) {
  SelfPairing r;
  r.witness = perm::transporter(G, {u, v}, {v, u});
  r.self_paired = r.witness.has_value();
  return r;
}

std::vector<Orbital> self_paired_scan(const GroupHandle &G, std::uint64_t cap) {
  if (G.degree() > cap)
    fail(ErrorKind::resource_limit, "self_paired_scan: degree exceeds the cap");
  if (!perm::is_transitive(G))
    fail(ErrorKind::precondition_violation, "self_paired_scan: group must be transitive");
  auto G0 = perm::pointwise_stabilizer(G, {0});
  std::vector<std::size_t> which(G.degree(), 0);
  std::vector<Orbital> out;
  for (const auto &orb : perm::orbits(G0)) {
    if (orb.size() == 1 && orb[0] == 0)
      continue;
    for (Point x : orb)
      which[x] = out.size();
    Orbital o;
    o.rep = orb.front();
    o.length = orb.size();
    out.push_back(o);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    // (0, v)^t = (0^t, 0) for t with v^t = 0, so the pair of (0, v) is the
    // orbital of (0, 0^t).
    auto t = perm::transporter(G, {out[i].rep}, {0});
    out[i].paired = which[(*t)[0]];
    out[i].self_paired = out[i].paired == i;
    if (out[i].self_paired)
      out[i].witness = is_self_paired(G, 0, out[i].rep).witness;
  }
  return out;
}

std::vector<PPartVerdict> valency_p_part_check(const BigInt &stabilizer_order,
                                               const BigInt &valency, unsigned s) {
  if (s == 0)
    fail(ErrorKind::invalid_argument, "valency_p_part_check: s must be positive");
  std::vector<PPartVerdict> out;
  for (const auto &p : numth::prime_set(stabilizer_order)) {
    PPartVerdict v;
    v.prime = p;
    v.s = s;
    v.stabilizer_part = numth::p_part(stabilizer_order, p).value;
    v.valency_part = numth::p_part(valency, p).value;
    v.pass = v.stabilizer_part >= numth::ipow(v.valency_part, s);
    out.push_back(v);
  }
  return out;
}

std::vector<PPartVerdict> valency_p_part_check(const CosetDigraph &D, unsigned s) {
  BigInt stab = perm::pointwise_stabilizer(D.group(), {0}).order();
  return valency_p_part_check(stab, valency(D), s);
}

BigInt forced_divisor(const BigInt &stabilizer_order, const BigInt &outer, unsigned s) {
  BigInt d = 1;
  const auto fo = numth::factorize(outer);
  for (const auto &[p, e] : numth::factorize(stabilizer_order)) {
    auto it = fo.find(p);
    const long need = long(s) * e - (it == fo.end() ? 0 : long(it->second));
    if (need > 0)
      d *= numth::ipow(p, unsigned((need + s - 1) / s));
  }
  return d;
}

std::vector<GroupHandle> normalised_normal_subgroups(const CosetDigraph &D, std::uint64_t cap) {
  if (D.H.order() > cap)
    fail(ErrorKind::resource_limit, "normalised_normal_subgroups: |H| exceeds the cap");
  std::vector<GroupHandle> out;
  for (const auto &c : subgroups::subgroup_classes(D.H).classes) {
    if (c.class_size != 1 || c.order == 1 || c.order == D.H.order())
      continue;
    if (perm::same_group(perm::conjugate(c.representative, D.g), c.representative))
      out.push_back(c.representative);
  }
  return out;
}

} // namespace cgt::digraph
