#pragma once

// Exact integer / rational arithmetic and the elementary number theory the
// rest of the library is built on. BigInt and BigRational are GMP values;
// mpq_class keeps every rational canonical (lowest terms, positive
// denominator) after each arithmetic operation.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace tcensus {

using BigInt = mpz_class;
using BigRational = mpq_class;

// All positive divisors of |n|, ascending. Throws std::invalid_argument for n == 0.
std::vector<BigInt> divisors(const BigInt& n);

// Integer roots of x^3 + a*x + b, ascending, without duplicates.
std::vector<BigInt> integer_cubic_roots(const BigInt& a, const BigInt& b);

// r >= 0 with r*r == n, or nullopt if n is negative or not a square.
std::optional<BigInt> perfect_square_root(const BigInt& n);

// D(x) = d(1) + d(2) + ... + d(x). Throws std::invalid_argument for x == 0.
BigInt divisor_summatory(std::uint64_t x);

// Prime factorisation of |n| as (prime, exponent) pairs, primes ascending.
// |n| <= 1 gives an empty list.
std::vector<std::pair<BigInt, unsigned>> factorize(const BigInt& n);

// Lossless conversion helpers; the narrowing one throws std::overflow_error.
BigInt to_big(std::int64_t v);
std::int64_t to_i64(const BigInt& v);
bool fits_i64(const BigInt& v);

namespace detail {

// Fixed-width fast paths used on the census hot loops. Callers guarantee
// the stated magnitude limits; results are exact.

__extension__ using i128 = __int128;
__extension__ using u128 = unsigned __int128;

std::uint64_t isqrt_u64(std::uint64_t n);
std::uint64_t icbrt_u64(std::uint64_t n);
std::uint64_t isqrt_u128(u128 n);

// Prime factorisation of n >= 1 (Pollard-Brent + deterministic Miller-Rabin).
std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n);
bool is_prime_u64(std::uint64_t n);

std::uint64_t icbrt_u128(u128 n);

// Integer roots of x^3 + a*x + c, ascending. Requires |a| < 2^40 and |c| < 2^100.
std::vector<std::int64_t> cubic_roots_small(std::int64_t a, i128 c);

// Positive divisors of n >= 1 by trial division, ascending.
std::vector<std::uint64_t> divisors_u64(std::uint64_t n);

// Smallest-prime-factor table for 0..n; spf[0] = spf[1] = 0.
std::vector<std::uint32_t> spf_sieve(std::uint32_t n);

// Positive divisors of 1 <= n <= spf.size()-1 using the table (unordered).
void divisors_from_spf(std::uint32_t n, const std::vector<std::uint32_t>& spf,
                       std::vector<std::uint32_t>& out);

// Primes <= n, ascending.
std::vector<std::uint32_t> primes_up_to(std::uint32_t n);

}  // namespace detail
}  // namespace tcensus
