#include <doctest.h>

#include "cgt/error.hpp"
#include "cgt/numth.hpp"

using namespace cgt;
using namespace cgt::numth;

namespace {

bool naive_prime(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

// Trial-division ppd oracle working with machine integers.
std::set<BigInt> naive_ppd(std::uint64_t n, unsigned m) {
  std::set<BigInt> out;
  BigInt v = ipow(n, m) - 1;
  for (std::uint64_t r = 2; BigInt(r) * r <= v; ++r) {
    if (!naive_prime(r) || v % r != 0)
      continue;
    bool primitive = true;
    for (unsigned i = 1; i < m && primitive; ++i)
      if ((ipow(n, i) - 1) % r == 0)
        primitive = false;
    if (primitive)
      out.insert(r);
    while (v % r == 0)
      v /= r;
  }
  if (v > 1) {
    bool primitive = true;
    for (unsigned i = 1; i < m && primitive; ++i)
      if ((ipow(n, i) - 1) % v == 0)
        primitive = false;
    if (primitive)
      out.insert(v);
  }
  return out;
}

bool power_of_two(std::uint64_t x) { return x && !(x & (x - 1)); }

} // namespace

TEST_CASE("p-parts") {
  CHECK(p_part(48, 2).value == 16);
  CHECK(p_part(720, 3).value == 9);
  CHECK(p_part(7962624, 2).value == ipow(2, 15));
  CHECK(p_part(7962624, 2).exponent == 15);
  CHECK_THROWS_AS(p_part(48, 4), Error);
  CHECK(factorial_p_part(6, 2).exponent == 4);
  CHECK(factorial_p_part(5, 5).value == 5);
  CHECK(factorial_p_part(1000, 3).exponent == 498);
}

TEST_CASE("factorial p-part matches the p-part of n!") {
  BigInt f = 1;
  for (std::uint64_t n = 0; n <= 20; ++n) {
    if (n)
      f *= n;
    for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u})
      CHECK(factorial_p_part(n, p).value == p_part(f, p).value);
  }
}

TEST_CASE("Legendre bound (n!)_p < p^(n/(p-1))") {
  for (unsigned p = 2; p <= 100; ++p) {
    if (!naive_prime(p))
      continue;
    for (std::uint64_t n = 1; n <= 2000; ++n) {
      // e < n/(p-1) is the exact form of the bound.
      CHECK_MESSAGE(factorial_p_part(n, p).exponent * (p - 1) < n, "n=" << n << " p=" << p);
    }
  }
}

TEST_CASE("2-part of n is below 2^(n-4)") {
  for (std::uint64_t n = 5; n <= 64; ++n)
    CHECK(p_part(n, 2).value < ipow(2, unsigned(n - 4)));
}

TEST_CASE("prime sets") {
  CHECK(prime_set(360) == std::set<BigInt>{2, 3, 5});
  CHECK(prime_set(1).empty());
  CHECK(prime_set(1092) == std::set<BigInt>{2, 3, 7, 13});
}

TEST_CASE("primality against trial division") {
  for (std::uint64_t n = 0; n < 20000; ++n)
    CHECK(is_prime(n) == naive_prime(n));
  CHECK(is_prime(BigInt("18446744073709551557")));
  CHECK_FALSE(is_prime(BigInt("18446744073709551559")));
  CHECK(is_prime(BigInt("170141183460469231731687303715884105727")));
  CHECK_FALSE(is_prime(BigInt("170141183460469231731687303715884105729")));
  // Carmichael numbers and a strong pseudoprime to several bases.
  for (std::uint64_t c : {561ull, 1105ull, 1729ull, 3215031751ull, 3825123056546413051ull})
    CHECK_FALSE(is_prime(c));
}

TEST_CASE("factorization reconstructs the input") {
  for (BigInt n : {BigInt(1), BigInt(2), BigInt(728), BigInt("4585351680"),
                   ipow(2, 64) + 1, ipow(3, 40) - 1, BigInt("1000000016000000063")}) {
    BigInt prod = 1;
    for (const auto &[p, e] : factorize(n)) {
      CHECK(is_prime(p));
      prod *= ipow(p, e);
    }
    CHECK(prod == n);
  }
}

TEST_CASE("ppd sets agree with the Zsigmondy exceptions") {
  CHECK(ppd_set(2, 6).empty());
  CHECK(ppd_set(3, 2).empty());
  CHECK(ppd_set(3, 6) == std::set<BigInt>{7});
  for (std::uint64_t n = 2; n <= 12; ++n)
    for (unsigned m = 2; m <= 12; ++m) {
      INFO("n=" << n << " m=" << m);
      auto s = ppd_set(n, m);
      CHECK(s == naive_ppd(n, m));
      bool exception = (n == 2 && m == 6) || (m == 2 && power_of_two(n + 1));
      CHECK(s.empty() == exception);
      for (const auto &r : s) {
        CHECK(r >= m + 1);
        CHECK(r % m == 1);
      }
    }
  CHECK_THROWS_AS(ppd_set(1, 3), Error);
  CHECK_THROWS_AS(ppd_set(3, 1), Error);
  CHECK_THROWS_AS(ppd_set(2, 200), Error);
}

TEST_CASE("Mersenne primes") {
  CHECK(is_mersenne_prime(7));
  CHECK_FALSE(is_mersenne_prime(9));
  CHECK(is_mersenne_prime(8191));
  CHECK_FALSE(is_mersenne_prime(2047));
  CHECK_FALSE(is_mersenne_prime(1));
  CHECK(is_mersenne_prime(3));
}

TEST_CASE("half p-part bound") {
  // 2^15 3^5 -> 2^8 3^3 = 6912.
  CHECK(half_p_part_bound(7962624) == 6912);
  CHECK(half_p_part_bound(1) == 1);
  CHECK(multiplicative_order(4, 17) == 4);
  CHECK(multiplicative_order(3, 7) == 6);
}
