#include "cgt/groups.hpp"

#include <numeric>
#include <sstream>

#include "cgt/error.hpp"

namespace cgt::groups {

using linalg::Field;
using linalg::FqMatrix;
using linalg::Vec;
using perm::Permutation;

namespace {

GroupSpec make(Kind k, std::vector<std::int64_t> params, std::vector<GroupSpec> args = {}) {
  GroupSpec s;
  s.kind = k;
  s.params = std::move(params);
  s.args = std::move(args);
  return s;
}

BigInt factorial(std::int64_t n) {
  BigInt f = 1;
  for (std::int64_t i = 2; i <= n; ++i)
    f *= i;
  return f;
}

bool is_prime_power(std::int64_t q) {
  if (q < 2)
    return false;
  return numth::factorize(BigInt(q)).size() == 1;
}

BigInt sp_order(unsigned m, const BigInt &q) {
  BigInt o = numth::ipow(q, m * m);
  for (unsigned i = 1; i <= m; ++i)
    o *= numth::ipow(q, 2 * i) - 1;
  return o;
}

} // namespace

GroupSpec sym(std::int64_t n) { return make(Kind::Sym, {n}); }
GroupSpec alt(std::int64_t n) { return make(Kind::Alt, {n}); }
GroupSpec cyc(std::int64_t n) { return make(Kind::Cyc, {n}); }
GroupSpec dih(std::int64_t n) { return make(Kind::Dih, {n}); }
GroupSpec metacyclic(std::int64_t n, std::int64_t r, std::int64_t m) {
  return make(Kind::Metacyclic, {n, r, m});
}
GroupSpec sp(std::int64_t dim, std::int64_t q) { return make(Kind::Sp, {dim, q}); }
GroupSpec psp(std::int64_t dim, std::int64_t q) { return make(Kind::PSp, {dim, q}); }
GroupSpec go_minus(std::int64_t dim, std::int64_t q) { return make(Kind::GOminus, {dim, q}); }
GroupSpec psl2(std::int64_t q) { return make(Kind::PSL2, {q}); }
GroupSpec pgl2(std::int64_t q) { return make(Kind::PGL2, {q}); }
GroupSpec direct_product(std::vector<GroupSpec> factors) {
  return make(Kind::DirectProduct, {}, std::move(factors));
}
GroupSpec wreath(GroupSpec component, std::int64_t k) {
  return make(Kind::Wreath, {k}, {std::move(component)});
}

std::string GroupSpec::to_string() const {
  std::ostringstream os;
  auto list = [&](const char *name) {
    os << name << '(';
    for (std::size_t i = 0; i < params.size(); ++i)
      os << (i ? "," : "") << params[i];
    os << ')';
  };
  switch (kind) {
  case Kind::Sym: list("S"); break;
  case Kind::Alt: list("A"); break;
  case Kind::Cyc: list("C"); break;
  case Kind::Dih: list("D"); break;
  case Kind::Metacyclic: list("MC"); break;
  case Kind::Sp: list("Sp"); break;
  case Kind::PSp: list("PSp"); break;
  case Kind::GOminus: list("GO-"); break;
  case Kind::PSL2: list("PSL2"); break;
  case Kind::PGL2: list("PGL2"); break;
  case Kind::DirectProduct:
    os << "x(";
    for (std::size_t i = 0; i < args.size(); ++i)
      os << (i ? "," : "") << args[i].to_string();
    os << ')';
    break;
  case Kind::Wreath:
    os << "wr(" << args.at(0).to_string() << ',' << params.at(0) << ')';
    break;
  }
  return os.str();
}

void validate(const GroupSpec &s) {
  auto bad = [&](const std::string &why) {
    fail(ErrorKind::invalid_argument, s.to_string() + ": " + why);
  };
  auto need = [&](std::size_t n) {
    if (s.params.size() != n)
      bad("expected " + std::to_string(n) + " parameter(s)");
  };
  switch (s.kind) {
  case Kind::Sym:
  case Kind::Alt:
  case Kind::Cyc:
    need(1);
    if (s.params[0] < 1)
      bad("degree must be positive");
    break;
  case Kind::Dih:
    need(1);
    if (s.params[0] < 3)
      bad("dihedral degree must be at least 3");
    break;
  case Kind::Metacyclic: {
    need(3);
    auto [n, r, m] = std::tuple{s.params[0], s.params[1], s.params[2]};
    if (n < 2 || m < 1)
      bad("need n >= 2 and m >= 1");
    if (std::gcd(((r % n) + n) % n, n) != 1)
      bad("r must be a unit modulo n");
    if (numth::multiplicative_order(BigInt(((r % n) + n) % n), BigInt(n)) != std::uint64_t(m))
      bad("r must have multiplicative order m modulo n");
    break;
  }
  case Kind::Sp:
  case Kind::PSp:
  case Kind::GOminus:
    need(2);
    if (s.params[0] < 2 || s.params[0] % 2)
      bad("dimension must be even and positive");
    if (!is_prime_power(s.params[1]))
      bad("q must be a prime power");
    if (s.kind == Kind::GOminus && s.params[1] % 2 == 0)
      bad("orthogonal groups need odd q");
    break;
  case Kind::PSL2:
  case Kind::PGL2:
    need(1);
    if (!is_prime_power(s.params[0]))
      bad("q must be a prime power");
    break;
  case Kind::DirectProduct:
    if (s.args.empty())
      bad("needs at least one factor");
    for (const auto &a : s.args)
      validate(a);
    break;
  case Kind::Wreath:
    need(1);
    if (s.args.size() != 1 || s.params[0] < 1)
      bad("needs a component and k >= 1");
    validate(s.args[0]);
    break;
  }
}

namespace {

BigInt degree_big(const GroupSpec &s) {
  switch (s.kind) {
  case Kind::Sym:
  case Kind::Alt:
  case Kind::Cyc:
  case Kind::Dih:
  case Kind::Metacyclic:
    return s.params[0];
  case Kind::Sp:
  case Kind::GOminus:
    return numth::ipow(s.params[1], unsigned(s.params[0])) - 1;
  case Kind::PSp:
    return (numth::ipow(s.params[1], unsigned(s.params[0])) - 1) / (s.params[1] - 1);
  case Kind::PSL2:
  case Kind::PGL2:
    return s.params[0] + 1;
  case Kind::DirectProduct: {
    BigInt d = 0;
    for (const auto &a : s.args)
      d += degree_big(a);
    return d;
  }
  case Kind::Wreath:
    return degree_big(s.args[0]) * s.params[0];
  }
  return 0;
}

} // namespace

std::uint64_t spec_degree(const GroupSpec &s) {
  validate(s);
  BigInt d = degree_big(s);
  if (d > BigInt(std::numeric_limits<std::uint32_t>::max()))
    fail(ErrorKind::resource_limit, "degree of " + s.to_string() + " is too large");
  return static_cast<std::uint64_t>(d);
}

BigInt spec_order(const GroupSpec &s) {
  validate(s);
  switch (s.kind) {
  case Kind::Sym:
    return factorial(s.params[0]);
  case Kind::Alt:
    return s.params[0] <= 2 ? BigInt(1) : BigInt(factorial(s.params[0]) / 2);
  case Kind::Cyc:
    return s.params[0];
  case Kind::Dih:
    return 2 * s.params[0];
  case Kind::Metacyclic:
    return s.params[0] * s.params[2];
  case Kind::Sp:
    return classical_order(Family::Sp, Sign::none, unsigned(s.params[0]), s.params[1]).value;
  case Kind::PSp:
    return classical_order(Family::PSp, Sign::none, unsigned(s.params[0]), s.params[1]).value;
  case Kind::GOminus:
    return classical_order(Family::GO, Sign::minus, unsigned(s.params[0]), s.params[1]).value;
  case Kind::PSL2:
    return classical_order(Family::PSL, Sign::none, 2, s.params[0]).value;
  case Kind::PGL2:
    return classical_order(Family::PGL, Sign::none, 2, s.params[0]).value;
  case Kind::DirectProduct: {
    BigInt o = 1;
    for (const auto &a : s.args)
      o *= spec_order(a);
    return o;
  }
  case Kind::Wreath:
    return numth::ipow(spec_order(s.args[0]), unsigned(s.params[0])) * factorial(s.params[0]);
  }
  return 0;
}

namespace {

std::vector<Point> shifted(const Permutation &g, std::size_t offset, std::size_t total) {
  std::vector<Point> img(total);
  std::iota(img.begin(), img.end(), Point{0});
  for (Point x = 0; x < g.degree(); ++x)
    img[offset + x] = static_cast<Point>(offset + g[x]);
  return img;
}

GroupHandle build(const GroupSpec &s, const ConstructOptions &opts) {
  const std::size_t n = static_cast<std::size_t>(spec_degree(s));
  if (n > opts.degree_cap)
    fail(ErrorKind::resource_limit, s.to_string() + " has degree " + std::to_string(n) +
                                        " above the cap " + std::to_string(opts.degree_cap));
  std::vector<Permutation> gens;
  switch (s.kind) {
  case Kind::Sym:
    if (n >= 2) {
      gens.push_back(Permutation::from_cycle_list({{0, 1}}, n));
      std::vector<Point> c(n);
      std::iota(c.begin(), c.end(), Point{0});
      gens.push_back(Permutation::from_cycle_list({c}, n));
    }
    break;
  case Kind::Alt:
    if (n >= 3) {
      gens.push_back(Permutation::from_cycle_list({{0, 1, 2}}, n));
      std::vector<Point> c;
      for (Point i = (n % 2 ? 0 : 1); i < n; ++i)
        c.push_back(i);
      if (n > 3)
        gens.push_back(Permutation::from_cycle_list({c}, n));
    }
    break;
  case Kind::Cyc:
  case Kind::Dih:
    if (n >= 2) {
      std::vector<Point> c(n);
      for (std::size_t i = 0; i < n; ++i)
        c[i] = static_cast<Point>((i + 1) % n);
      gens.emplace_back(c);
    }
    if (s.kind == Kind::Dih) {
      std::vector<Point> r(n);
      for (std::size_t i = 0; i < n; ++i)
        r[i] = static_cast<Point>((n - i) % n);
      gens.emplace_back(r);
    }
    break;
  case Kind::Metacyclic: {
    const auto r = static_cast<std::size_t>(((s.params[1] % s.params[0]) + s.params[0]) % s.params[0]);
    std::vector<Point> t(n), m(n);
    for (std::size_t i = 0; i < n; ++i) {
      t[i] = static_cast<Point>((i + 1) % n);
      m[i] = static_cast<Point>((i * r) % n);
    }
    gens.emplace_back(t);
    gens.emplace_back(m);
    break;
  }
  case Kind::Sp:
  case Kind::PSp: {
    Field F = Field::of_order(unsigned(s.params[1]));
    auto mats = linalg::sp_generators(unsigned(s.params[0] / 2), F);
    GroupHandle G = s.kind == Kind::Sp
                        ? act_on_vectors(F, std::size_t(s.params[0]), mats, opts.degree_cap)
                        : act_on_projective(F, std::size_t(s.params[0]), mats, opts.degree_cap);
    gens = G.generators();
    break;
  }
  case Kind::GOminus: {
    Field F = Field::of_order(unsigned(s.params[1]));
    auto Q = linalg::minus_type_form(unsigned(s.params[0] / 2), F);
    gens = act_on_vectors(F, std::size_t(s.params[0]), linalg::reflection_generators(Q), opts.degree_cap)
               .generators();
    break;
  }
  case Kind::PSL2:
  case Kind::PGL2: {
    Field F = Field::of_order(unsigned(s.params[0]));
    auto mats = linalg::sp_generators(1, F);
    if (s.kind == Kind::PGL2) {
      FqMatrix d = FqMatrix::identity(F, 2);
      d.at(0, 0) = F.primitive();
      mats.push_back(d);
    }
    gens = act_on_projective(F, 2, mats, opts.degree_cap).generators();
    break;
  }
  case Kind::DirectProduct: {
    std::size_t offset = 0;
    for (const auto &a : s.args) {
      GroupHandle A = build(a, opts);
      for (const auto &g : A.generators())
        gens.emplace_back(shifted(g, offset, n));
      offset += A.degree();
    }
    break;
  }
  case Kind::Wreath: {
    GroupHandle A = build(s.args[0], opts);
    const std::size_t a = A.degree(), k = std::size_t(s.params[0]);
    for (const auto &g : A.generators())
      gens.emplace_back(shifted(g, 0, n));
    auto block_perm = [&](const std::vector<std::size_t> &sigma) {
      std::vector<Point> img(n);
      for (std::size_t b = 0; b < k; ++b)
        for (std::size_t x = 0; x < a; ++x)
          img[b * a + x] = static_cast<Point>(sigma[b] * a + x);
      return Permutation(img);
    };
    if (k >= 2) {
      std::vector<std::size_t> sw(k), cyc(k);
      std::iota(sw.begin(), sw.end(), 0);
      std::swap(sw[0], sw[1]);
      for (std::size_t b = 0; b < k; ++b)
        cyc[b] = (b + 1) % k;
      gens.push_back(block_perm(sw));
      if (k > 2)
        gens.push_back(block_perm(cyc));
    }
    break;
  }
  }
  GroupHandle G(n, gens);
  G.set_order_hint(spec_order(s));
  if (s.kind == Kind::Wreath) {
    GroupHandle A = build(s.args[0], opts);
    auto w = std::make_shared<perm::WreathInfo>();
    w->component_degree = A.degree();
    w->k = std::size_t(s.params[0]);
    w->component_generators = A.generators();
    w->component_order = A.order_hint() ? *A.order_hint() : A.order();
    G.set_wreath(w);
  }
  return G;
}

} // namespace

GroupHandle construct(const GroupSpec &spec, const ConstructOptions &opts) {
  validate(spec);
  return build(spec, opts);
}

// ---------------------------------------------------------------------------
// Classical orders

std::string family_name(Family f, Sign sign) {
  static const char *names[] = {"GL", "SL", "PSL", "PGL", "Sp", "PSp", "GU", "SU", "PSU", "GO",
                                "SO", "Omega", "POmega", "Sz", "G2", "F4", "2G2", "A", "S"};
  std::string s = names[static_cast<int>(f)];
  if (sign == Sign::plus)
    s += "+";
  else if (sign == Sign::minus)
    s += "-";
  return s;
}

ClassicalOrder classical_order(Family f, Sign sign, unsigned n, const BigInt &q) {
  ClassicalOrder out{f, sign, n, q, 0};
  auto bad = [&](const std::string &why) {
    fail(ErrorKind::invalid_argument, family_name(f, sign) + ": " + why);
  };
  const bool orth = f == Family::GO || f == Family::SO || f == Family::Omega || f == Family::POmega;
  if (f != Family::Alt && f != Family::Sym && (q < 2 || numth::factorize(q).size() != 1))
    bad("q must be a prime power");
  if (orth != (sign != Sign::none))
    bad(orth ? "orthogonal families need a sign" : "only orthogonal families take a sign");
  const bool odd_q = (q % 2) == 1;
  auto gl = [&](unsigned d) {
    BigInt o = numth::ipow(q, d * (d - 1) / 2);
    for (unsigned i = 1; i <= d; ++i)
      o *= numth::ipow(q, i) - 1;
    return o;
  };
  auto gu = [&](unsigned d) {
    BigInt o = numth::ipow(q, d * (d - 1) / 2);
    for (unsigned i = 1; i <= d; ++i)
      o *= (i % 2) ? BigInt(numth::ipow(q, i) + 1) : BigInt(numth::ipow(q, i) - 1);
    return o;
  };
  switch (f) {
  case Family::GL:
  case Family::SL:
  case Family::PSL:
  case Family::PGL:
  case Family::GU:
  case Family::SU:
  case Family::PSU:
    if (n < 1)
      bad("dimension must be positive");
    break;
  case Family::Sp:
  case Family::PSp:
    if (n < 2 || n % 2)
      bad("dimension must be even");
    break;
  default:
    break;
  }
  switch (f) {
  case Family::GL: out.value = gl(n); break;
  case Family::SL:
  case Family::PGL: out.value = gl(n) / (q - 1); break;
  case Family::PSL: out.value = gl(n) / (q - 1) / boost::multiprecision::gcd(BigInt(n), q - 1); break;
  case Family::GU: out.value = gu(n); break;
  case Family::SU: out.value = gu(n) / (q + 1); break;
  case Family::PSU: out.value = gu(n) / (q + 1) / boost::multiprecision::gcd(BigInt(n), q + 1); break;
  case Family::Sp: out.value = sp_order(n / 2, q); break;
  case Family::PSp: out.value = sp_order(n / 2, q) / boost::multiprecision::gcd(BigInt(2), q - 1); break;
  case Family::GO:
  case Family::SO:
  case Family::Omega:
  case Family::POmega: {
    BigInt go;
    if (sign == Sign::odd) {
      if (n < 1 || n % 2 == 0)
        bad("odd-dimensional type needs odd dimension");
      unsigned m = (n - 1) / 2;
      // For q even the odd-dimensional orthogonal group is isomorphic to Sp.
      if (!odd_q) {
        out.value = sp_order(m, q);
        break;
      }
      go = 2 * sp_order(m, q);
      BigInt so = go / 2;
      BigInt omega = m == 0 ? so : BigInt(so / 2);
      out.value = f == Family::GO ? go : f == Family::SO ? so : omega;
      break;
    }
    if (n < 2 || n % 2)
      bad("plus and minus types need even dimension");
    unsigned m = n / 2;
    BigInt qm = numth::ipow(q, m);
    go = 2 * numth::ipow(q, m * (m - 1)) * (sign == Sign::plus ? BigInt(qm - 1) : BigInt(qm + 1));
    for (unsigned i = 1; i < m; ++i)
      go *= numth::ipow(q, 2 * i) - 1;
    BigInt so = odd_q ? BigInt(go / 2) : go;
    BigInt omega = go / 2;
    if (odd_q)
      omega = so / 2;
    if (f == Family::GO)
      out.value = go;
    else if (f == Family::SO)
      out.value = so;
    else if (f == Family::Omega)
      out.value = omega;
    else {
      BigInt z = odd_q ? BigInt(boost::multiprecision::gcd(BigInt(4), qm - (sign == Sign::plus ? 1 : -1)) / 2) : BigInt(1);
      out.value = omega / z;
    }
    break;
  }
  case Family::Sz: {
    BigInt q2 = q * q;
    out.value = q2 * (q2 + 1) * (q - 1);
    break;
  }
  case Family::G2:
    out.value = numth::ipow(q, 6) * (numth::ipow(q, 6) - 1) * (q * q - 1);
    break;
  case Family::F4:
    out.value = numth::ipow(q, 24) * (numth::ipow(q, 12) - 1) * (numth::ipow(q, 8) - 1) *
                (numth::ipow(q, 6) - 1) * (q * q - 1);
    break;
  case Family::Ree:
    out.value = numth::ipow(q, 3) * (numth::ipow(q, 3) + 1) * (q - 1);
    break;
  case Family::Alt:
    out.value = n < 2 ? BigInt(1) : BigInt(factorial(n) / 2);
    break;
  case Family::Sym:
    out.value = factorial(n);
    break;
  }
  return out;
}

ClassicalOrder classical_order(const std::string &name, unsigned n, const BigInt &q) {
  std::string base = name;
  Sign sign = Sign::none;
  if (!base.empty() && (base.back() == '+' || base.back() == '-')) {
    sign = base.back() == '+' ? Sign::plus : Sign::minus;
    base.pop_back();
  }
  static const std::vector<std::pair<std::string, Family>> table = {
      {"GL", Family::GL},     {"SL", Family::SL},         {"PSL", Family::PSL},
      {"PGL", Family::PGL},   {"Sp", Family::Sp},         {"PSp", Family::PSp},
      {"GU", Family::GU},     {"SU", Family::SU},         {"PSU", Family::PSU},
      {"GO", Family::GO},     {"SO", Family::SO},         {"Omega", Family::Omega},
      {"POmega", Family::POmega}, {"Sz", Family::Sz},     {"G2", Family::G2},
      {"F4", Family::F4},     {"2G2", Family::Ree},       {"A", Family::Alt},
      {"Alt", Family::Alt},   {"S", Family::Sym},         {"Sym", Family::Sym}};
  for (const auto &[key, fam] : table)
    if (key == base) {
      bool orth = fam == Family::GO || fam == Family::SO || fam == Family::Omega ||
                  fam == Family::POmega;
      if (orth && sign == Sign::none)
        sign = Sign::odd;
      return classical_order(fam, sign, n, q);
    }
  fail(ErrorKind::invalid_argument, "unknown group family '" + name + "'");
}

// ---------------------------------------------------------------------------
// Wreath structure

BaseAndTop base_and_top(const GroupHandle &W) {
  const auto &info = W.wreath();
  if (!info)
    fail(ErrorKind::invalid_argument, "group was not built as a wreath product");
  const std::size_t a = info->component_degree, k = info->k, n = W.degree();
  BaseAndTop out;
  std::vector<Permutation> gens;
  for (std::size_t b = 0; b < k; ++b)
    for (const auto &g : info->component_generators)
      gens.emplace_back(shifted(g, b * a, n));
  out.base = GroupHandle(n, gens);
  out.base.set_order_hint(numth::ipow(info->component_order, unsigned(k)));
  for (std::size_t b = 0; b < k; ++b) {
    std::vector<Point> blk(a);
    std::iota(blk.begin(), blk.end(), static_cast<Point>(b * a));
    out.blocks.push_back(std::move(blk));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Matrix actions

namespace {

std::uint64_t checked_power(unsigned q, std::size_t d, std::uint64_t limit) {
  BigInt v = numth::ipow(q, unsigned(d));
  if (v > limit)
    fail(ErrorKind::resource_limit, "vector space of size " + v.str() + " exceeds the cap");
  return static_cast<std::uint64_t>(v);
}

void check_dims(std::size_t dim, const std::vector<FqMatrix> &gens) {
  for (const auto &g : gens)
    if (g.rows() != dim || g.cols() != dim)
      fail(ErrorKind::invalid_argument, "matrix dimension mismatch");
}

} // namespace

GroupHandle act_on_vectors(const Field &F, std::size_t dim, const std::vector<FqMatrix> &gens,
                           std::uint64_t cap) {
  check_dims(dim, gens);
  const std::uint64_t size = checked_power(F.q(), dim, cap + 1);
  const std::size_t n = static_cast<std::size_t>(size - 1);
  std::vector<Permutation> perms;
  for (const auto &M : gens) {
    std::vector<Point> img(n);
    for (std::uint64_t c = 1; c < size; ++c)
      img[c - 1] = static_cast<Point>(linalg::encode(M.apply(linalg::decode(c, dim, F.q())), F.q()) - 1);
    perms.emplace_back(std::move(img));
  }
  return GroupHandle(n, std::move(perms));
}

std::vector<Vec> projective_points(const Field &F, std::size_t dim) {
  const std::uint64_t size = checked_power(F.q(), dim, std::uint64_t{1} << 32);
  std::vector<Vec> pts;
  for (std::uint64_t c = 1; c < size; ++c) {
    Vec v = linalg::decode(c, dim, F.q());
    if (linalg::normalize_projective(F, v) == v)
      pts.push_back(std::move(v));
  }
  return pts;
}

GroupHandle act_on_projective(const Field &F, std::size_t dim, const std::vector<FqMatrix> &gens,
                              std::uint64_t cap) {
  check_dims(dim, gens);
  checked_power(F.q(), dim, cap * (F.q() - 1) + 1);
  auto pts = projective_points(F, dim);
  std::unordered_map<std::uint64_t, Point> index;
  for (std::size_t i = 0; i < pts.size(); ++i)
    index.emplace(linalg::encode(pts[i], F.q()), static_cast<Point>(i));
  std::vector<Permutation> perms;
  for (const auto &M : gens) {
    std::vector<Point> img(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
      img[i] = index.at(linalg::encode(linalg::normalize_projective(F, M.apply(pts[i])), F.q()));
    perms.emplace_back(std::move(img));
  }
  return GroupHandle(pts.size(), std::move(perms));
}

GroupHandle tensor_embed(const Field &F, std::size_t a, const std::vector<FqMatrix> &A, std::size_t b,
                         const std::vector<FqMatrix> &B, std::uint64_t cap) {
  check_dims(a, A);
  check_dims(b, B);
  std::vector<FqMatrix> gens;
  FqMatrix Ia = FqMatrix::identity(F, a), Ib = FqMatrix::identity(F, b);
  for (const auto &g : A)
    gens.push_back(g.kronecker(Ib));
  for (const auto &h : B)
    gens.push_back(Ia.kronecker(h));
  return act_on_projective(F, a * b, gens, cap);
}

std::string subspace_key(const linalg::Subspace &w) {
  const FqMatrix &m = w.basis();
  std::string k;
  k.reserve(m.rows() * m.cols() * 2 + 1);
  k.push_back(static_cast<char>(m.rows()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      linalg::Elem e = m.at(r, c);
      k.push_back(static_cast<char>(e & 0xFF));
      k.push_back(static_cast<char>(e >> 8));
    }
  return k;
}

Point SubspaceOrbit::index_of(const linalg::Subspace &w) const {
  auto it = index.find(subspace_key(w));
  if (it == index.end())
    fail(ErrorKind::invalid_argument, "subspace is not in the orbit");
  return it->second;
}

SubspaceOrbit subspace_orbit(const std::vector<FqMatrix> &gens, const linalg::Subspace &seed,
                             std::uint64_t cap) {
  SubspaceOrbit out;
  out.points.push_back(seed);
  out.index.emplace(subspace_key(seed), 0);
  std::vector<std::vector<Point>> img(gens.size());
  for (std::size_t i = 0; i < out.points.size(); ++i)
    for (std::size_t s = 0; s < gens.size(); ++s) {
      linalg::Subspace w = out.points[i].image(gens[s]);
      auto [it, fresh] = out.index.emplace(subspace_key(w), static_cast<Point>(out.points.size()));
      if (fresh) {
        if (out.points.size() >= cap)
          fail(ErrorKind::resource_limit, "subspace orbit exceeds the cap");
        out.points.push_back(std::move(w));
      }
      img[s].push_back(it->second);
    }
  std::vector<Permutation> perms;
  for (auto &v : img)
    perms.emplace_back(std::move(v));
  out.group = GroupHandle(out.points.size(), std::move(perms));
  return out;
}

} // namespace cgt::groups
