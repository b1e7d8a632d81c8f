#include "cgt/numth.hpp"

#include <algorithm>
#include <vector>

#include "cgt/error.hpp"

namespace cgt {

std::string to_string(const BigInt &n) { return n.str(); }

const char *error_kind_name(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::invalid_argument: return "invalid-argument";
  case ErrorKind::precondition_violation: return "precondition-violation";
  case ErrorKind::resource_limit: return "resource-limit";
  case ErrorKind::unsupported: return "unsupported";
  case ErrorKind::syntax: return "syntax";
  case ErrorKind::not_antisymmetric: return "not-antisymmetric";
  case ErrorKind::loop: return "loop";
  }
  return "unknown";
}

namespace numth {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

const BigInt two64 = BigInt(1) << 64;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1)
      r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

bool miller_rabin_u64(u64 n) {
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (a % n == 0)
      continue;
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1)
      continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite)
      return false;
  }
  return true;
}

BigInt mod(const BigInt &a, const BigInt &n) {
  BigInt r = a % n;
  if (r < 0)
    r += n;
  return r;
}

bool strong_probable_prime_base2(const BigInt &n) {
  BigInt d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  BigInt x = boost::multiprecision::powm(BigInt(2), d, n);
  if (x == 1 || x == n - 1)
    return true;
  for (unsigned r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n - 1)
      return true;
  }
  return false;
}

int jacobi(BigInt a, BigInt n) {
  a = mod(a, n);
  int result = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      unsigned r = static_cast<unsigned>(n % 8);
      if (r == 3 || r == 5)
        result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3)
      result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

BigInt half_mod(const BigInt &x, const BigInt &n) {
  return BigInt((x & 1) ? BigInt((x + n) / 2) : BigInt(x / 2));
}

bool strong_lucas(const BigInt &n) {
  BigInt root = boost::multiprecision::sqrt(n);
  if (root * root == n)
    return false;
  BigInt D = 5;
  for (;;) {
    int j = jacobi(D, n);
    if (j == -1)
      break;
    if (j == 0 && boost::multiprecision::abs(D) != n)
      return false;
    D = D > 0 ? BigInt(-(D + 2)) : BigInt(-(D - 2));
  }
  const BigInt P = 1;
  const BigInt Q = (1 - D) / 4;
  BigInt d = n + 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  BigInt U = 1, V = P, Qk = mod(Q, n);
  const BigInt Dm = mod(D, n), Qm = mod(Q, n);
  unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(d));
  for (int b = static_cast<int>(bits) - 1; b >= 0; --b) {
    U = U * V % n;
    V = mod(V * V - 2 * Qk, n);
    Qk = Qk * Qk % n;
    if (boost::multiprecision::bit_test(d, static_cast<unsigned>(b))) {
      BigInt U2 = half_mod(mod(P * U + V, n), n);
      BigInt V2 = half_mod(mod(Dm * U + P * V, n), n);
      U = U2;
      V = V2;
      Qk = Qk * Qm % n;
    }
  }
  if (U == 0 || V == 0)
    return true;
  for (unsigned r = 1; r < s; ++r) {
    V = mod(V * V - 2 * Qk, n);
    Qk = Qk * Qk % n;
    if (V == 0)
      return true;
  }
  return false;
}

const std::vector<u64> &small_primes() {
  static const std::vector<u64> primes = [] {
    const u64 limit = 100000;
    std::vector<bool> sieve(limit + 1, true);
    std::vector<u64> out;
    for (u64 i = 2; i <= limit; ++i) {
      if (!sieve[i])
        continue;
      out.push_back(i);
      for (u64 j = i * i; j <= limit; j += i)
        sieve[j] = false;
    }
    return out;
  }();
  return primes;
}

BigInt pollard_brent(const BigInt &n, u64 seed) {
  if ((n & 1) == 0)
    return 2;
  BigInt c = 1 + seed % 97, y = 2 + seed, g = 1, q = 1, x, ys;
  const unsigned m = 64;
  unsigned r = 1;
  auto f = [&](const BigInt &v) { return (v * v + c) % n; };
  do {
    x = y;
    for (unsigned i = 0; i < r; ++i)
      y = f(y);
    unsigned k = 0;
    do {
      ys = y;
      for (unsigned i = 0; i < std::min(m, r - k); ++i) {
        y = f(y);
        q = q * boost::multiprecision::abs(x - y) % n;
      }
      g = boost::multiprecision::gcd(q, n);
      k += m;
    } while (k < r && g == 1);
    r *= 2;
  } while (g == 1);
  if (g == n) {
    do {
      ys = f(ys);
      g = boost::multiprecision::gcd(boost::multiprecision::abs(x - ys), n);
    } while (g == 1);
  }
  return g;
}

void factor_rec(const BigInt &n, std::map<BigInt, unsigned> &out) {
  if (n == 1)
    return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  for (u64 seed = 0;; ++seed) {
    BigInt d = pollard_brent(n, seed);
    if (d != n && d != 1) {
      factor_rec(d, out);
      factor_rec(n / d, out);
      return;
    }
  }
}

void require_prime(const BigInt &p) {
  if (!is_prime(p))
    fail(ErrorKind::invalid_argument, "not a prime: " + p.str());
}

int mobius(unsigned n) {
  int result = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p)
      continue;
    n /= p;
    if (n % p == 0)
      return 0;
    result = -result;
  }
  if (n > 1)
    result = -result;
  return result;
}

} // namespace

BigInt ipow(const BigInt &base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

bool is_prime(const BigInt &n) {
  if (n < 2)
    return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p)
      return true;
    if (n % p == 0)
      return false;
  }
  if (n < two64)
    return miller_rabin_u64(static_cast<u64>(n));
  return strong_probable_prime_base2(n) && strong_lucas(n);
}

std::map<BigInt, unsigned> factorize(const BigInt &n) {
  if (n < 1)
    fail(ErrorKind::invalid_argument, "factorize expects a positive integer");
  std::map<BigInt, unsigned> out;
  BigInt m = n;
  for (u64 p : small_primes()) {
    if (BigInt(p) * p > m)
      break;
    while (m % p == 0) {
      m /= p;
      ++out[BigInt(p)];
    }
  }
  if (m > 1)
    factor_rec(m, out);
  return out;
}

PrimePart p_part(const BigInt &n, const BigInt &p) {
  require_prime(p);
  if (n < 1)
    fail(ErrorKind::invalid_argument, "p_part expects a positive integer");
  PrimePart out{1, p, 0};
  BigInt m = n;
  while (m % p == 0) {
    m /= p;
    out.value *= p;
    ++out.exponent;
  }
  return out;
}

PrimePart factorial_p_part(std::uint64_t n, const BigInt &p) {
  require_prime(p);
  std::uint64_t e = 0;
  BigInt pk = p;
  while (pk <= n) {
    e += static_cast<std::uint64_t>(BigInt(n) / pk);
    pk *= p;
  }
  return {ipow(p, static_cast<unsigned>(e)), p, static_cast<unsigned>(e)};
}

std::set<BigInt> prime_set(const BigInt &n) {
  std::set<BigInt> out;
  for (const auto &[p, e] : factorize(n))
    out.insert(p);
  return out;
}

std::uint64_t multiplicative_order(const BigInt &a, const BigInt &r) {
  if (boost::multiprecision::gcd(a, r) != 1)
    fail(ErrorKind::invalid_argument, "multiplicative_order needs coprime arguments");
  if (r == 1)
    return 1;
  BigInt lambda = 1;
  for (const auto &[p, e] : factorize(r)) {
    BigInt l = (p - 1) * ipow(p, e - 1);
    if (p == 2 && e >= 3)
      l /= 2;
    lambda = boost::multiprecision::lcm(lambda, l);
  }
  BigInt order = lambda;
  for (const auto &[p, e] : factorize(lambda)) {
    for (unsigned i = 0; i < e; ++i) {
      if (boost::multiprecision::powm(mod(a, r), order / p, r) == 1)
        order /= p;
      else
        break;
    }
  }
  return static_cast<std::uint64_t>(order);
}

std::set<BigInt> ppd_set(const BigInt &n, unsigned m) {
  if (n < 2 || m < 2)
    fail(ErrorKind::invalid_argument, "ppd_set requires n >= 2 and m >= 2");
  if (ipow(n, m) > (BigInt(1) << 128))
    fail(ErrorKind::resource_limit, "ppd_set feasibility cap n^m <= 2^128 exceeded");
  // The primitive part of n^m - 1 is the cyclotomic value Phi_m(n).
  BigInt num = 1, den = 1;
  for (unsigned d = 1; d <= m; ++d) {
    if (m % d)
      continue;
    int mu = mobius(m / d);
    if (mu == 1)
      num *= ipow(n, d) - 1;
    else if (mu == -1)
      den *= ipow(n, d) - 1;
  }
  std::set<BigInt> out;
  for (const BigInt &r : prime_set(num / den))
    if (n % r != 0 && multiplicative_order(n, r) == m)
      out.insert(r);
  return out;
}

bool is_mersenne_prime(const BigInt &q) {
  if (!is_prime(q))
    return false;
  BigInt s = q + 1;
  return (s & (s - 1)) == 0;
}

BigInt half_p_part_bound(const BigInt &n) {
  BigInt out = 1;
  for (const auto &[p, e] : factorize(n))
    out *= ipow(p, (e + 1) / 2);
  return out;
}

} // namespace numth
} // namespace cgt
