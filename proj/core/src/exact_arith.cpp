#include "tcensus/exact_arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tcensus {

using detail::i128;
using detail::u128;

BigInt to_big(std::int64_t v) {
  // long is 64-bit on every platform this builds on; keep the check explicit.
  static_assert(sizeof(long) == 8);
  return BigInt(static_cast<long>(v));
}

bool fits_i64(const BigInt& v) { return v.fits_slong_p(); }

std::int64_t to_i64(const BigInt& v) {
  if (!v.fits_slong_p()) throw std::overflow_error("BigInt does not fit in 64 bits");
  return v.get_si();
}

namespace {

BigInt from_u128(u128 v) {
  BigInt hi(static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64)));
  BigInt lo(static_cast<unsigned long>(static_cast<std::uint64_t>(v)));
  return (hi << 64) + lo;
}

BigInt cubic_value(const BigInt& x, const BigInt& a, const BigInt& b) {
  return x * x * x + a * x + b;
}

// Finds x in [lo, hi] with f(x) == 0 where f is monotone on the integers of
// the range (increasing when sign == +1, decreasing when sign == -1).
template <typename Int, typename Eval>
std::optional<Int> monotone_zero(Int lo, Int hi, int sign, Eval f) {
  if (lo > hi) return std::nullopt;
  while (lo < hi) {
    Int mid = lo + (hi - lo) / 2;
    const auto v = f(mid);
    if ((sign > 0 && v < 0) || (sign < 0 && v > 0)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (f(lo) == 0) return lo;
  return std::nullopt;
}

}  // namespace

std::vector<BigInt> divisors(const BigInt& n) {
  if (n == 0) throw std::invalid_argument("divisors: n must be nonzero");
  const BigInt m = abs(n);
  if (m.fits_ulong_p() && m.get_ui() <= 1'000'000'000'000ULL) {
    std::vector<BigInt> out;
    for (std::uint64_t d : detail::divisors_u64(m.get_ui())) {
      out.emplace_back(static_cast<unsigned long>(d));
    }
    return out;
  }
  std::vector<BigInt> out{BigInt(1)};
  for (const auto& [p, e] : factorize(m)) {
    const std::size_t base = out.size();
    BigInt pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BigInt> integer_cubic_roots(const BigInt& a, const BigInt& b) {
  // Any root satisfies |x| <= 2 * max(|a|^(1/2), |b/2|^(1/3)).
  BigInt sa, cb;
  BigInt abs_a = abs(a), abs_b = abs(b);
  mpz_sqrt(sa.get_mpz_t(), abs_a.get_mpz_t());
  mpz_root(cb.get_mpz_t(), abs_b.get_mpz_t(), 3);
  const BigInt bound = 2 * (std::max(sa, cb) + 1);

  auto f = [&](const BigInt& x) { return cubic_value(x, a, b); };
  std::vector<BigInt> roots;
  auto push = [&](const std::optional<BigInt>& r) {
    if (r) roots.push_back(*r);
  };
  if (a >= 0) {
    push(monotone_zero<BigInt>(-bound, bound, +1, f));
  } else {
    BigInt t;
    BigInt third = -a / 3;  // floor, since -a > 0
    mpz_sqrt(t.get_mpz_t(), third.get_mpz_t());
    push(monotone_zero<BigInt>(-bound, BigInt(-t - 1), +1, f));
    push(monotone_zero<BigInt>(BigInt(-t), t, -1, f));
    push(monotone_zero<BigInt>(BigInt(t + 1), bound, +1, f));
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

std::optional<BigInt> perfect_square_root(const BigInt& n) {
  if (n < 0) return std::nullopt;
  if (!mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

BigInt divisor_summatory(std::uint64_t x) {
  if (x == 0) throw std::invalid_argument("divisor_summatory: x must be positive");
  // Dirichlet hyperbola: D(x) = 2 * sum_{i <= sqrt x} floor(x / i) - floor(sqrt x)^2.
  const std::uint64_t s = detail::isqrt_u64(x);
  u128 sum = 0;
  for (std::uint64_t i = 1; i <= s; ++i) sum += x / i;
  return from_u128(2 * sum - static_cast<u128>(s) * s);
}

namespace detail {

std::uint64_t isqrt_u64(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t isqrt_u128(u128 n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t icbrt_u64(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::cbrt(static_cast<double>(n)));
  auto cube = [](std::uint64_t v) { return static_cast<u128>(v) * v * v; };
  while (r > 0 && cube(r) > n) --r;
  while (cube(r + 1) <= n) ++r;
  return r;
}

std::uint64_t icbrt_u128(u128 n) {
  auto r = static_cast<std::uint64_t>(std::cbrt(static_cast<long double>(n)));
  auto cube = [](std::uint64_t v) { return static_cast<u128>(v) * v * v; };
  while (r > 0 && cube(r) > n) --r;
  while (cube(r + 1) <= n) ++r;
  return r;
}

std::vector<std::int64_t> cubic_roots_small(std::int64_t a, i128 c) {
  const std::uint64_t ua = static_cast<std::uint64_t>(a < 0 ? -a : a);
  const u128 uc = static_cast<u128>(c < 0 ? -c : c);
  const auto bound =
      static_cast<std::int64_t>(2 * (std::max(isqrt_u64(ua), icbrt_u128(uc)) + 1));
  auto f = [&](std::int64_t x) {
    const i128 xx = x;
    return xx * xx * xx + static_cast<i128>(a) * xx + c;
  };
  std::vector<std::int64_t> roots;
  auto push = [&](std::optional<std::int64_t> r) {
    if (r) roots.push_back(*r);
  };
  if (a >= 0) {
    push(monotone_zero<std::int64_t>(-bound, bound, +1, f));
  } else {
    const auto t = static_cast<std::int64_t>(isqrt_u64(ua / 3));
    push(monotone_zero<std::int64_t>(-bound, -t - 1, +1, f));
    push(monotone_zero<std::int64_t>(-t, t, -1, f));
    push(monotone_zero<std::int64_t>(t + 1, bound, +1, f));
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

std::vector<std::uint64_t> divisors_u64(std::uint64_t n) {
  std::vector<std::uint64_t> lo, hi;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    lo.push_back(d);
    if (d != n / d) hi.push_back(n / d);
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

std::vector<std::uint32_t> spf_sieve(std::uint32_t n) {
  std::vector<std::uint32_t> spf(static_cast<std::size_t>(n) + 1, 0);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (spf[i]) continue;
    for (std::uint64_t j = i; j <= n; j += i) {
      if (!spf[j]) spf[j] = static_cast<std::uint32_t>(i);
    }
  }
  return spf;
}

void divisors_from_spf(std::uint32_t n, const std::vector<std::uint32_t>& spf,
                       std::vector<std::uint32_t>& out) {
  out.clear();
  out.push_back(1);
  while (n > 1) {
    const std::uint32_t p = spf[n];
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    const std::size_t base = out.size();
    std::uint32_t pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t n) {
  std::vector<std::uint32_t> primes;
  if (n < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return primes;
}

}  // namespace detail
}  // namespace tcensus
