#include "cgt/constructions.hpp"

#include <map>
#include <random>
#include <unordered_map>

#include "cgt/error.hpp"
#include "cgt/subgroups.hpp"

namespace cgt::constructions {

using linalg::Field;
using linalg::FqMatrix;
using linalg::Vec;

GroupHandle frobenius21() {
  std::vector<Point> a(7), b(7);
  for (Point x = 0; x < 7; ++x) {
    a[x] = (x + 1) % 7;
    b[x] = (2 * x) % 7;
  }
  GroupHandle G(7, {Permutation(a), Permutation(b)});
  G.set_order_hint(21);
  return G;
}

GroupHandle pgaml2(unsigned q) {
  Field F = Field::of_order(q);
  auto mats = linalg::sp_generators(1, F);
  FqMatrix d = FqMatrix::identity(F, 2);
  d.at(0, 0) = F.primitive();
  mats.push_back(d);
  GroupHandle pgl = groups::act_on_projective(F, 2, mats);
  auto pts = groups::projective_points(F, 2);
  std::unordered_map<std::uint64_t, Point> index;
  for (std::size_t i = 0; i < pts.size(); ++i)
    index.emplace(linalg::encode(pts[i], q), static_cast<Point>(i));
  std::vector<Point> frob(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Vec v{F.pow(pts[i][0], F.p()), F.pow(pts[i][1], F.p())};
    frob[i] = index.at(linalg::encode(linalg::normalize_projective(F, v), q));
  }
  auto gens = pgl.generators();
  gens.emplace_back(frob);
  GroupHandle G(pts.size(), gens);
  BigInt Q = q;
  G.set_order_hint(Q * (Q * Q - 1) * F.f());
  return G;
}

GroupAndSubgroup c17_4_in_pgaml2() {
  GroupHandle G = pgaml2(16);
  std::mt19937_64 rng(perm::default_seed());
  Permutation x;
  while (true) {
    Permutation r = perm::random_element(G, rng);
    std::uint64_t o = r.small_order();
    if (o % 17 == 0) {
      x = r.pow(static_cast<long long>(o / 17));
      break;
    }
  }
  GroupHandle P(G.degree(), {x});
  GroupHandle N = subgroups::normalizer(G, P);
  if (N.order() != 136)
    fail(ErrorKind::invalid_argument, "unexpected normalizer of a Sylow 17-subgroup");
  Permutation y;
  do {
    y = perm::random_element(N, rng);
  } while (y.small_order() != 8);
  GroupHandle H = perm::subgroup(G, {x, y * y});
  return {G, H};
}

GroupAndSubgroup c17_4_diagonal_wreath() {
  GroupHandle W = groups::construct(groups::wreath(groups::metacyclic(17, 4, 4), 2));
  const auto &info = *W.wreath();
  const std::size_t d = info.component_degree;
  std::vector<Permutation> diag;
  for (const auto &c : info.component_generators) {
    std::vector<Point> img(2 * d);
    for (std::size_t i = 0; i < d; ++i) {
      img[i] = c[static_cast<Point>(i)];
      img[d + i] = static_cast<Point>(d + c[static_cast<Point>(i)]);
    }
    diag.emplace_back(img);
  }
  return {W, perm::subgroup(W, diag)};
}

Permutation antisymmetric_element(const GroupHandle &G, const GroupHandle &H, std::uint64_t seed,
                                  int tries) {
  auto act = perm::coset_action(G, H);
  std::vector<Permutation> hgens;
  for (const auto &h : H.generators())
    hgens.push_back(act.image_of(h));
  std::mt19937_64 rng(seed);
  for (int t = 0; t < tries; ++t) {
    Permutation g = perm::random_element(G, rng);
    if (H.contains(g))
      continue;
    GroupHandle Himg(act.image.degree(), hgens);
    auto orb = perm::orbit(Himg, act.point_of(g));
    Point back = act.point_of(g.inverse());
    if (std::find(orb.begin(), orb.end(), back) == orb.end())
      return g;
  }
  fail(ErrorKind::precondition_violation, "no element g with g^-1 outside HgH was found");
}

GroupHandle act_on_edges(const GroupHandle &G, const std::vector<std::pair<Point, Point>> &edges) {
  std::map<std::pair<Point, Point>, Point> index;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [a, b] = edges[i];
    index.emplace(std::minmax(a, b), static_cast<Point>(i));
  }
  std::vector<Permutation> gens;
  for (const auto &g : G.generators()) {
    std::vector<Point> img(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
      auto it = index.find(std::minmax(g[edges[i].first], g[edges[i].second]));
      if (it == index.end())
        fail(ErrorKind::invalid_argument, "act_on_edges: edge set is not invariant");
      img[i] = it->second;
    }
    gens.emplace_back(img);
  }
  return GroupHandle(edges.size(), gens);
}

std::optional<Permutation> part_swapping_automorphism(const std::vector<std::vector<Point>> &adj,
                                                      std::size_t half) {
  const std::size_t n = adj.size();
  std::vector<std::vector<char>> A(n, std::vector<char>(n, 0));
  for (std::size_t v = 0; v < n; ++v)
    for (Point w : adj[v])
      A[v][w] = 1;
  // Breadth-first order from vertex 0; each later vertex has an earlier parent.
  std::vector<Point> order{0};
  std::vector<Point> parent(n, 0);
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Point w : adj[order[i]])
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = order[i];
        order.push_back(w);
      }
  if (order.size() != n)
    fail(ErrorKind::invalid_argument, "part_swapping_automorphism: graph is not connected");

  std::vector<Point> sigma(n, 0);
  std::vector<char> used(n, 0);
  std::vector<char> assigned(n, 0);
  std::function<bool(std::size_t)> extend = [&](std::size_t k) -> bool {
    if (k == n)
      return true;
    const Point v = order[k];
    std::vector<Point> cands;
    if (k == 0) {
      for (std::size_t c = half; c < n; ++c)
        cands.push_back(static_cast<Point>(c));
    } else {
      cands = adj[sigma[parent[v]]];
    }
    for (Point c : cands) {
      if (used[c] || adj[c].size() != adj[v].size())
        continue;
      bool ok = true;
      for (Point w : adj[v])
        if (assigned[w] && !A[c][sigma[w]]) {
          ok = false;
          break;
        }
      if (!ok)
        continue;
      sigma[v] = c;
      used[c] = assigned[v] = 1;
      if (extend(k + 1))
        return true;
      used[c] = assigned[v] = 0;
    }
    return false;
  };
  if (!extend(0))
    return std::nullopt;
  return Permutation(sigma);
}

FlagGeometry sp4_2_flags() {
  Field F(2);
  auto V = linalg::standard_symplectic(2, F);
  auto mats = linalg::sp_generators(2, F);
  auto pts = groups::projective_points(F, 4);
  std::unordered_map<std::uint64_t, Point> pindex;
  for (std::size_t i = 0; i < pts.size(); ++i)
    pindex.emplace(linalg::encode(pts[i], 2), static_cast<Point>(i));
  std::vector<linalg::Subspace> lines;
  std::map<std::string, Point> lindex;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (V->form(pts[i], pts[j]) == 0) {
        linalg::Subspace L(V, {pts[i], pts[j]});
        if (lindex.emplace(groups::subspace_key(L), static_cast<Point>(lines.size())).second)
          lines.push_back(L);
      }
  const std::size_t np = pts.size(), nl = lines.size();
  if (np != 15 || nl != 15)
    fail(ErrorKind::invalid_argument, "sp4_2_flags: unexpected geometry");

  FlagGeometry out;
  out.incidence.assign(np + nl, {});
  for (std::size_t l = 0; l < nl; ++l)
    for (std::size_t p = 0; p < np; ++p)
      if (lines[l].contains(pts[p])) {
        out.incidence[p].push_back(static_cast<Point>(np + l));
        out.incidence[np + l].push_back(static_cast<Point>(p));
        out.flag_list.push_back({static_cast<Point>(p), static_cast<Point>(np + l)});
      }

  std::vector<Permutation> gens;
  for (const auto &M : mats) {
    std::vector<Point> img(np + nl);
    for (std::size_t p = 0; p < np; ++p)
      img[p] = pindex.at(linalg::encode(linalg::normalize_projective(F, M.apply(pts[p])), 2));
    for (std::size_t l = 0; l < nl; ++l)
      img[np + l] = static_cast<Point>(np + lindex.at(groups::subspace_key(lines[l].image(M))));
    gens.emplace_back(img);
  }
  out.symplectic = GroupHandle(np + nl, gens);
  out.symplectic.set_order_hint(720);
  auto dual = part_swapping_automorphism(out.incidence, np);
  if (!dual)
    fail(ErrorKind::invalid_argument, "sp4_2_flags: no duality found");
  out.duality = *dual;
  gens.push_back(out.duality);
  out.points_and_lines = GroupHandle(np + nl, gens);
  out.flags = act_on_edges(out.points_and_lines, out.flag_list);
  return out;
}

SubspacePairExample c1_pair_example() {
  Field F(2);
  auto V = linalg::standard_symplectic(6, F);
  auto e = [&](unsigned i) { return linalg::basis_e(*V, i); };
  auto f = [&](unsigned i) { return linalg::basis_f(*V, i); };
  auto plus = [&](Vec a, const Vec &b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      a[i] = F.add(a[i], b[i]);
    return a;
  };
  // Sp(8,2) on <e2..e5, f2..f5>: index r of the 8-dimensional basis
  // e1..e4, f1..f4 goes to e_{r+2} or f_{r-2}.
  auto map = [](std::size_t r) -> std::size_t { return r < 4 ? r + 1 : 6 + (r - 4) + 1; };
  std::vector<FqMatrix> gens;
  for (const auto &M : linalg::sp_generators(4, F)) {
    FqMatrix big = FqMatrix::identity(F, 12);
    for (std::size_t r = 0; r < 8; ++r)
      for (std::size_t c = 0; c < 8; ++c)
        big.at(map(r), map(c)) = M.at(r, c);
    gens.push_back(big);
  }
  linalg::Subspace W1(V, {e(1), f(1), e(4), f(4), plus(e(5), f(3)), plus(f(5), e(2)), e(6), f(6)});
  linalg::Subspace W2(V, {e(1), f(1), e(2), f(2), e(3), f(3), e(6), f(6)});
  SubspacePairExample out{groups::subspace_orbit(gens, W1), W1, W2};
  out.orbit.group.set_order_hint(BigInt("47377612800"));
  out.w1 = out.orbit.index_of(W1);
  out.w2 = out.orbit.index_of(W2);
  return out;
}

GroupHandle psp2_pgo4minus_ext() {
  Field F(3);
  auto Q = linalg::minus_type_form(2, F);
  const auto I2 = FqMatrix::identity(F, 2), I4 = FqMatrix::identity(F, 4);
  std::vector<FqMatrix> mats;
  for (const auto &a : linalg::sp_generators(1, F))
    mats.push_back(a.kronecker(I4));
  for (const auto &b : linalg::reflection_generators(Q))
    mats.push_back(I2.kronecker(b));
  FqMatrix d = FqMatrix::identity(F, 2);
  d.at(1, 1) = F.neg(1);
  mats.push_back(d.kronecker(linalg::minus_type_similitude(2, F)));

  std::vector<Vec> pts;
  std::unordered_map<std::uint64_t, Point> index;
  for (const auto &u : groups::projective_points(F, 2))
    for (const auto &w : groups::projective_points(F, 4)) {
      if (Q.value(w) != 0)
        continue;
      Vec t(8);
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 4; ++j)
          t[i * 4 + j] = F.mul(u[i], w[j]);
      t = linalg::normalize_projective(F, t);
      index.emplace(linalg::encode(t, 3), static_cast<Point>(pts.size()));
      pts.push_back(std::move(t));
    }
  std::vector<Permutation> gens;
  for (const auto &M : mats) {
    std::vector<Point> img(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      auto it = index.find(linalg::encode(linalg::normalize_projective(F, M.apply(pts[i])), 3));
      if (it == index.end())
        fail(ErrorKind::invalid_argument, "psp2_pgo4minus_ext: point set is not invariant");
      img[i] = it->second;
    }
    gens.emplace_back(img);
  }
  GroupHandle G(pts.size(), gens);
  G.set_order_hint(17280);
  return G;
}

} // namespace cgt::constructions
