/**
 * @file numth.hpp
 * @brief Exact integer arithmetic: prime parts, factorial p-parts,
 *        primality, factorization and primitive prime divisors.
 */
#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace cgt {

using BigInt = boost::multiprecision::cpp_int;

std::string to_string(const BigInt &n);

namespace numth {

struct PrimePart {
  BigInt value;
  BigInt prime;
  unsigned exponent = 0;
};

BigInt ipow(const BigInt &base, unsigned exponent);

/// Deterministic Miller-Rabin below 2^64, Baillie-PSW above.
bool is_prime(const BigInt &n);

/// Prime factorization by trial division with a Pollard-rho fallback.
std::map<BigInt, unsigned> factorize(const BigInt &n);

PrimePart p_part(const BigInt &n, const BigInt &p);

/// (n!)_p by Legendre's formula.
PrimePart factorial_p_part(std::uint64_t n, const BigInt &p);

std::set<BigInt> prime_set(const BigInt &n);

/// Primes dividing n^m - 1 but no n^i - 1 with 0 < i < m.
std::set<BigInt> ppd_set(const BigInt &n, unsigned m);

bool is_mersenne_prime(const BigInt &q);

/// Multiplicative order of a modulo r, for gcd(a, r) = 1.
std::uint64_t multiplicative_order(const BigInt &a, const BigInt &r);

/// prod_p p^ceil(e_p / 2) where n = prod_p p^e_p.
BigInt half_p_part_bound(const BigInt &n);

} // namespace numth
} // namespace cgt
