// Integer factorisation: 64-bit Pollard-Brent over Montgomery arithmetic for
// the hot paths, and an mpz fallback for anything wider.

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

#include "tcensus/exact_arith.hpp"

namespace tcensus {
namespace detail {
namespace {

// Montgomery arithmetic modulo an odd n < 2^63.
class Montgomery {
 public:
  explicit Montgomery(std::uint64_t n) : n_(n) {
    std::uint64_t inv = n;
    for (int i = 0; i < 5; ++i) inv *= 2 - n * inv;
    n_inv_ = inv;
    r2_ = static_cast<std::uint64_t>((-static_cast<u128>(n)) % n);
  }

  std::uint64_t reduce(u128 t) const {
    const std::uint64_t m = static_cast<std::uint64_t>(t) * (0 - n_inv_);
    const u128 u = (t + static_cast<u128>(m) * n_) >> 64;
    return u >= n_ ? static_cast<std::uint64_t>(u - n_) : static_cast<std::uint64_t>(u);
  }
  std::uint64_t to(std::uint64_t x) const { return mul(x % n_, r2_); }
  std::uint64_t from(std::uint64_t x) const { return reduce(x); }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return reduce(static_cast<u128>(a) * b);
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= n_ ? s - n_ : s;
  }
  std::uint64_t one() const { return to(1); }
  std::uint64_t pow(std::uint64_t base, std::uint64_t e) const {
    std::uint64_t r = one();
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

 private:
  std::uint64_t n_;
  std::uint64_t n_inv_;
  std::uint64_t r2_;
};

constexpr std::array<std::uint32_t, 54> kSmallPrimes = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
    47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107,
    109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181,
    191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251};

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

// Brent's cycle finding; returns a nontrivial factor of odd composite n.
std::uint64_t pollard_brent(std::uint64_t n) {
  if (n >= (std::uint64_t{1} << 63)) {
    // Montgomery form needs n < 2^63; plain mulmod is fine for this rare case.
    for (std::uint64_t c = 1;; ++c) {
      std::uint64_t x = 2, y = 2, d = 1;
      auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
      while (d == 1) {
        x = f(x);
        y = f(f(y));
        d = std::gcd(x > y ? x - y : y - x, n);
      }
      if (d != n) return d;
    }
  }
  const Montgomery mg(n);
  const std::uint64_t block = 128;
  for (std::uint64_t c0 = 1;; ++c0) {
    const std::uint64_t c = mg.to(c0);
    auto f = [&](std::uint64_t v) { return mg.add(mg.mul(v, v), c); };
    std::uint64_t y = mg.to(2), x = y, ys = y, q = mg.one();
    std::uint64_t g = 1;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += block) {
        ys = y;
        const std::uint64_t lim = std::min(block, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = f(y);
          q = mg.mul(q, x > y ? x - y : y - x);
        }
        g = std::gcd(mg.from(q), n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(mg.from(x > ys ? x - ys : ys - x), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_rec(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t r = isqrt_u64(n);
  if (r * r == n) {
    factor_rec(r, out);
    factor_rec(r, out);
    return;
  }
  const std::uint64_t d = pollard_brent(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint32_t p : kSmallPrimes) {
    if (n % p == 0) return n == p;
  }
  if (n < 257ULL * 257ULL) return true;
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic base set for n < 2^64.
  for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL,
                          1795265022ULL}) {
    std::uint64_t x = powmod(a % n, d, n);
    if (a % n == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> result;
  if (n <= 1) return result;
  for (std::uint32_t p : kSmallPrimes) {
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    result.emplace_back(p, e);
  }
  if (n > 1) {
    std::vector<std::uint64_t> primes;
    factor_rec(n, primes);
    std::sort(primes.begin(), primes.end());
    for (std::size_t i = 0; i < primes.size();) {
      std::size_t j = i;
      while (j < primes.size() && primes[j] == primes[i]) ++j;
      result.emplace_back(primes[i], static_cast<unsigned>(j - i));
      i = j;
    }
  }
  return result;
}

}  // namespace detail

namespace {

BigInt pollard_brent_big(const BigInt& n) {
  for (unsigned long c = 1;; ++c) {
    BigInt x = 2, y = 2, d = 1;
    auto f = [&](const BigInt& v) {
      BigInt r = v * v + c;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
      return r;
    };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      BigInt diff = abs(x - y);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

void factor_big_rec(const BigInt& n, std::vector<BigInt>& out) {
  if (n == 1) return;
  if (n.fits_ulong_p() && n.get_ui() <= UINT64_MAX) {
    for (auto [p, e] : detail::factor_u64(n.get_ui())) {
      for (unsigned i = 0; i < e; ++i) out.emplace_back(static_cast<unsigned long>(p));
    }
    return;
  }
  if (mpz_probab_prime_p(n.get_mpz_t(), 40) > 0) {
    out.push_back(n);
    return;
  }
  BigInt r;
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    for (unsigned long k = 2;; ++k) {
      if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), k)) {
        std::vector<BigInt> sub;
        factor_big_rec(r, sub);
        for (unsigned long i = 0; i < k; ++i) out.insert(out.end(), sub.begin(), sub.end());
        return;
      }
    }
  }
  BigInt d = pollard_brent_big(n);
  factor_big_rec(d, out);
  factor_big_rec(BigInt(n / d), out);
}

}  // namespace

std::vector<std::pair<BigInt, unsigned>> factorize(const BigInt& n) {
  BigInt m = abs(n);
  std::vector<std::pair<BigInt, unsigned>> result;
  if (m <= 1) return result;
  if (m.fits_ulong_p()) {
    for (auto [p, e] : detail::factor_u64(m.get_ui())) {
      result.emplace_back(BigInt(static_cast<unsigned long>(p)), e);
    }
    return result;
  }
  std::vector<BigInt> primes;
  for (unsigned long p = 2; p < 10000 && m > 1; ++p) {
    if (!detail::is_prime_u64(p)) continue;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      primes.emplace_back(p);
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    }
  }
  factor_big_rec(m, primes);
  std::sort(primes.begin(), primes.end());
  for (std::size_t i = 0; i < primes.size();) {
    std::size_t j = i;
    while (j < primes.size() && primes[j] == primes[i]) ++j;
    result.emplace_back(primes[i], static_cast<unsigned>(j - i));
    i = j;
  }
  return result;
}

}  // namespace tcensus
