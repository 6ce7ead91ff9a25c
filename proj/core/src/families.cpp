#include "tcensus/families.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "parallel.hpp"
#include "tcensus/elliptic.hpp"
#include "tcensus/error.hpp"

namespace tcensus {

using detail::i128;

// --- CurveSet --------------------------------------------------------------

CurveSet::CurveSet(std::vector<CoeffPair> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

bool CurveSet::contains(const CoeffPair& p) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), p);
}

CurveSet CurveSet::filtered(bool (*keep)(const CoeffPair&)) const {
  CurveSet out;
  std::copy_if(pairs_.begin(), pairs_.end(), std::back_inserter(out.pairs_), keep);
  return out;
}

CurveSet set_union(std::span<const CurveSet* const> sets) {
  std::vector<CoeffPair> merged;
  for (const CurveSet* s : sets) {
    std::vector<CoeffPair> next;
    next.reserve(merged.size() + s->size());
    std::set_union(merged.begin(), merged.end(), s->begin(), s->end(),
                   std::back_inserter(next));
    merged = std::move(next);
  }
  CurveSet out(std::move(merged));
  return out;
}

namespace {

constexpr std::size_t kChunks = 64;

void check_bound(std::int64_t max_coeff) {
  if (max_coeff < 0) throw std::invalid_argument("coefficient bound must be >= 0");
  if (max_coeff > 1'000'000'000) {
    throw std::invalid_argument("coefficient bound above 10^9 is not supported");
  }
}

bool nonsingular(i128 a, i128 b) { return 4 * a * a * a + 27 * b * b != 0; }

i128 abs128(i128 v) { return v < 0 ? -v : v; }

CurveSet merge_chunks(std::vector<std::vector<CoeffPair>>& parts) {
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  std::vector<CoeffPair> all;
  all.reserve(total);
  for (auto& p : parts) {
    all.insert(all.end(), p.begin(), p.end());
    std::vector<CoeffPair>().swap(p);
  }
  return CurveSet(std::move(all));
}

[[noreturn]] void oracle_failure(int prime, i128 a, i128 b, const std::string& why) {
  throw InvariantViolation("order-" + std::to_string(prime) + " family produced (" +
                           std::to_string(static_cast<std::int64_t>(a)) + "," +
                           std::to_string(static_cast<std::int64_t>(b)) + "): " + why);
}

// --- order 2 ---------------------------------------------------------------

// Calls emit(z1, z2, A, B) for each witness with B != 0 and |B| in [lo, hi).
template <typename Emit>
void walk_order2(std::int64_t max_coeff, std::int64_t lo, std::int64_t hi,
                 const std::vector<std::uint32_t>& spf, Emit&& emit) {
  std::vector<std::uint32_t> divs;
  for (std::int64_t ub = lo; ub < hi; ++ub) {
    detail::divisors_from_spf(static_cast<std::uint32_t>(ub), spf, divs);
    for (std::uint32_t d : divs) {
      const std::int64_t q = ub / d;
      // A = z1 - z2^2 >= -M forces z2^2 <= M + |z1|.
      if (static_cast<i128>(q) * q > max_coeff + static_cast<i128>(d)) continue;
      for (std::int64_t sb : {std::int64_t{1}, std::int64_t{-1}}) {
        for (std::int64_t sz : {std::int64_t{1}, std::int64_t{-1}}) {
          const std::int64_t z1 = sz * static_cast<std::int64_t>(d);
          const std::int64_t b = sb * ub;
          const std::int64_t z2 = b / z1;
          const std::int64_t a = z1 - z2 * z2;
          if (a > max_coeff || a < -max_coeff) continue;
          if (!nonsingular(a, b)) continue;
          emit(z1, z2, a, b);
        }
      }
    }
  }
}

// --- order 3 ---------------------------------------------------------------

// No z1 beyond this can give |B| <= M for any |A| <= M:
// B = A^2/(36 z1^2) - 3/2 A z1^2 - 27/4 z1^6.
bool order3_z1_feasible(std::int64_t max_coeff, std::int64_t z1) {
  const long double m = static_cast<long double>(max_coeff);
  const long double z = std::fabs(static_cast<long double>(z1));
  const long double z2 = z * z;
  const long double lhs = 6.75L * z2 * z2 * z2;
  const long double rhs = m + 1.5L * m * z2 + m * m / (36.0L * z2);
  return lhs <= 2.0L * rhs + 1.0L;
}

template <typename Emit>
void walk_order3(std::int64_t max_coeff, std::int64_t lo, std::int64_t hi,
                 const std::vector<std::uint32_t>& spf, Emit&& emit) {
  std::vector<std::uint32_t> divs;
  for (std::int64_t ua = lo; ua < hi; ++ua) {
    detail::divisors_from_spf(static_cast<std::uint32_t>(ua), spf, divs);
    for (std::uint32_t d : divs) {
      if (!order3_z1_feasible(max_coeff, d)) continue;
      for (std::int64_t sa : {std::int64_t{1}, std::int64_t{-1}}) {
        for (std::int64_t sz : {std::int64_t{1}, std::int64_t{-1}}) {
          const i128 z1 = sz * static_cast<std::int64_t>(d);
          const i128 a = sa * ua;
          const i128 z1_4 = z1 * z1 * z1 * z1;
          const i128 num = a - 27 * z1_4;
          if (num % (6 * z1) != 0) continue;
          const i128 z2 = num / (6 * z1);
          const i128 b = z2 * z2 - 27 * z1_4 * z1 * z1;
          if (abs128(b) > max_coeff || !nonsingular(a, b)) continue;
          emit(static_cast<std::int64_t>(z1), static_cast<std::int64_t>(z2),
               static_cast<std::int64_t>(a), static_cast<std::int64_t>(b),
               static_cast<std::int64_t>(3 * z1 * z1),
               static_cast<std::int64_t>(9 * z1 * z1 * z1 + z2));
        }
      }
    }
  }
}

// A = 0: B = t^2 with point (0, t), or B = -432 w^6 with point (12 w^2, 36 w^3)
// (the latter is z1 = 2w, z2 = -36 w^3).
template <typename Emit>
void walk_order3_zero_a(std::int64_t max_coeff, Emit&& emit) {
  for (std::int64_t t = 1; t * t <= max_coeff; ++t) emit(0, t, 0, t * t, 0, t);
  for (std::int64_t w = 1; 432 * w * w * w * w * w * w <= max_coeff; ++w) {
    const std::int64_t w3 = w * w * w;
    emit(2 * w, -36 * w3, 0, -432 * w3 * w3, 12 * w * w, 36 * w3);
  }
}

// --- orders 5 and 7 --------------------------------------------------------

i128 f5(i128 p, i128 q) {
  return q * q * q * q - 12 * q * q * q * p + 14 * q * q * p * p + 12 * p * p * p * q +
         p * p * p * p;
}
i128 g5(i128 p, i128 q) {
  return q * q * q * q - 18 * q * q * q * p + 74 * q * q * p * p + 18 * p * p * p * q +
         p * p * p * p;
}
i128 sextic7(i128 p, i128 q) {
  const i128 p2 = p * p, q2 = q * q, p3 = p2 * p, q3 = q2 * q;
  return q3 * q3 + 5 * q2 * q3 * p - 10 * q2 * q2 * p2 - 15 * q3 * p3 + 30 * q2 * p2 * p2 -
         11 * q * p2 * p3 + p3 * p3;
}
i128 f7(i128 p, i128 q) { return (p * p - p * q + q * q) * sextic7(p, q); }

constexpr std::int64_t kG7[13] = {1,   -18, 117, -354, 570, -486, 273,
                                  -222, 174, -46, -15,  6,   1};
// sum_i kG7[i] p^(12-i) q^i
i128 g7(i128 p, i128 q) {
  i128 acc = 0;
  for (int i = 0; i <= 12; ++i) {
    i128 term = kG7[i];
    for (int j = 0; j < 12 - i; ++j) term *= p;
    for (int j = 0; j < i; ++j) term *= q;
    acc += term;
  }
  return acc;
}

double eval_real(int prime, double p, double q) {
  double pp[13], qq[13];
  pp[0] = qq[0] = 1;
  for (int i = 1; i <= 12; ++i) {
    pp[i] = pp[i - 1] * p;
    qq[i] = qq[i - 1] * q;
  }
  if (prime == 5) {
    const double f = qq[4] - 12 * qq[3] * p + 14 * qq[2] * pp[2] + 12 * pp[3] * q + pp[4];
    const double g = qq[4] - 18 * qq[3] * p + 74 * qq[2] * pp[2] + 18 * pp[3] * q + pp[4];
    return std::max(std::fabs(f), std::fabs(g));
  }
  const double s = qq[6] + 5 * qq[5] * p - 10 * qq[4] * pp[2] - 15 * qq[3] * pp[3] +
                   30 * qq[2] * pp[4] - 11 * q * pp[5] + pp[6];
  const double f = (pp[2] - p * q + qq[2]) * s;
  double g = 0;
  for (int i = 0; i <= 12; ++i) g += kG7[i] * pp[12 - i] * qq[i];
  return std::max(std::fabs(f), std::fabs(g));
}

struct PQHit {
  CoeffPair pair;
  std::int64_t p;
  std::int64_t q;
  int k_den;  // k = 1 / k_den
};

// Canonical (p, q) in the box of half-width r, excluding the origin.
template <typename Fn>
void walk_box(std::int64_t r, Fn&& fn) {
  for (std::int64_t q = 0; q <= r; ++q) {
    for (std::int64_t p = -r; p <= r; ++p) {
      if (q == 0 && p <= 0) continue;
      fn(p, q);
    }
  }
}

std::vector<PQHit> scan_order5(std::int64_t max_coeff, std::int64_t r) {
  std::vector<PQHit> hits;
  walk_box(r, [&](std::int64_t p, std::int64_t q) {
    const i128 a = -27 * f5(p, q);
    const i128 b = 54 * (static_cast<i128>(p) * p + static_cast<i128>(q) * q) * g5(p, q);
    if (abs128(a) > max_coeff || abs128(b) > max_coeff || !nonsingular(a, b)) return;
    hits.push_back({{static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)}, p, q, 1});
  });
  return hits;
}

std::vector<PQHit> scan_order7(std::int64_t max_coeff, std::int64_t r) {
  std::vector<PQHit> hits;
  walk_box(r, [&](std::int64_t p, std::int64_t q) {
    const i128 f = f7(p, q);
    const i128 g = g7(p, q);
    // k = 1
    {
      const i128 a = -27 * f;
      const i128 b = 54 * g;
      if (abs128(a) <= max_coeff && abs128(b) <= max_coeff && nonsingular(a, b)) {
        hits.push_back({{static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)}, p, q, 1});
      }
    }
    // k = 1/3: A = -F/3, B = 2G/27
    if (f % 3 == 0 && (2 * g) % 27 == 0) {
      const i128 a = -f / 3;
      const i128 b = 2 * g / 27;
      if (abs128(a) <= max_coeff && abs128(b) <= max_coeff && nonsingular(a, b)) {
        hits.push_back({{static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)}, p, q, 3});
      }
    }
  });
  return hits;
}

std::vector<PQHit> verified_rare(int prime, std::int64_t max_coeff, const GenOptions& opts) {
  const std::int64_t r = safe_box_half_width(prime, max_coeff);
  auto scan = [&](std::int64_t radius) {
    return prime == 5 ? scan_order5(max_coeff, radius) : scan_order7(max_coeff, radius);
  };
  std::vector<PQHit> hits = scan(r * std::max(1, opts.box_scale));
  if (opts.check_extended_box) {
    for (const PQHit& h : scan(2 * r * std::max(1, opts.box_scale))) {
      const std::int64_t rr = r * std::max(1, opts.box_scale);
      if (h.p > rr || h.p < -rr || h.q > rr) {
        throw InvariantViolation("order-" + std::to_string(prime) +
                                 " solution outside the safe box at (p,q)=(" +
                                 std::to_string(h.p) + "," + std::to_string(h.q) + ")");
      }
    }
  }
  std::vector<PQHit> verified;
  for (const PQHit& h : hits) {
    const TorsionGroup g = torsion_subgroup(CurvePair(h.pair.a, h.pair.b));
    if (g.has_point_of_order(prime)) {
      verified.push_back(h);
    } else if (prime == 7) {
      oracle_failure(7, h.pair.a, h.pair.b, "no point of order 7");
    }
  }
  return verified;
}

}  // namespace

CurveSet gen2(std::int64_t max_coeff, const GenOptions& opts) {
  check_bound(max_coeff);
  if (max_coeff == 0) return {};
  const auto spf = detail::spf_sieve(static_cast<std::uint32_t>(max_coeff));
  std::vector<std::vector<CoeffPair>> parts(kChunks);
  detail::parallel_chunks(1, max_coeff + 1, kChunks, opts.workers,
                          [&](std::int64_t lo, std::int64_t hi, std::size_t c) {
                            auto& out = parts[c];
                            walk_order2(max_coeff, lo, hi, spf,
                                        [&](std::int64_t, std::int64_t z2, std::int64_t a,
                                            std::int64_t b) {
                                          const i128 r = -z2;
                                          if (r * r * r + a * r + b != 0) {
                                            oracle_failure(2, a, b, "-z2 is not a root");
                                          }
                                          out.push_back({a, b});
                                        });
                          });
  std::vector<CoeffPair> zero_b;
  for (std::int64_t a = -max_coeff; a <= max_coeff; ++a) {
    if (a != 0) zero_b.push_back({a, 0});
  }
  parts.push_back(std::move(zero_b));
  return merge_chunks(parts);
}

CurveSet gen3(std::int64_t max_coeff, const GenOptions& opts) {
  check_bound(max_coeff);
  if (max_coeff == 0) return {};
  const auto spf = detail::spf_sieve(static_cast<std::uint32_t>(max_coeff));
  std::vector<std::vector<CoeffPair>> parts(kChunks + 1);
  auto verify = [](std::vector<CoeffPair>& out) {
    return [&out](std::int64_t, std::int64_t, std::int64_t a, std::int64_t b, std::int64_t x,
                  std::int64_t y) {
      if (detail::point_order_small(a, b, x, y) != 3) {
        oracle_failure(3, a, b, "witness point is not of order 3");
      }
      out.push_back({a, b});
    };
  };
  detail::parallel_chunks(1, max_coeff + 1, kChunks, opts.workers,
                          [&](std::int64_t lo, std::int64_t hi, std::size_t c) {
                            walk_order3(max_coeff, lo, hi, spf, verify(parts[c]));
                          });
  walk_order3_zero_a(max_coeff, verify(parts[kChunks]));
  return merge_chunks(parts);
}

CurveSet gen5(std::int64_t max_coeff, const GenOptions& opts) {
  check_bound(max_coeff);
  if (max_coeff == 0) return {};
  std::vector<CoeffPair> pairs;
  for (const PQHit& h : verified_rare(5, max_coeff, opts)) pairs.push_back(h.pair);
  return CurveSet(std::move(pairs));
}

CurveSet gen7(std::int64_t max_coeff, const GenOptions& opts) {
  check_bound(max_coeff);
  if (max_coeff == 0) return {};
  std::vector<CoeffPair> pairs;
  for (const PQHit& h : verified_rare(7, max_coeff, opts)) pairs.push_back(h.pair);
  return CurveSet(std::move(pairs));
}

CurveSet generate(int prime, std::int64_t max_coeff, const GenOptions& opts) {
  switch (prime) {
    case 2:
      return gen2(max_coeff, opts);
    case 3:
      return gen3(max_coeff, opts);
    case 5:
      return gen5(max_coeff, opts);
    case 7:
      return gen7(max_coeff, opts);
    default:
      throw std::invalid_argument("prime must be one of 2, 3, 5, 7");
  }
}

std::vector<FamilyCandidate> family_candidates(int prime, std::int64_t max_coeff) {
  check_bound(max_coeff);
  std::vector<FamilyCandidate> out;
  if (max_coeff == 0) return out;
  auto z_candidate = [&](std::int64_t z1, std::int64_t z2, std::int64_t a, std::int64_t b) {
    out.push_back({prime, to_big(a), to_big(b), ZWitness{to_big(z1), to_big(z2)}});
  };
  switch (prime) {
    case 2: {
      const auto spf = detail::spf_sieve(static_cast<std::uint32_t>(max_coeff));
      walk_order2(max_coeff, 1, max_coeff + 1, spf, z_candidate);
      // B = 0: z2 = 0 and z1 = A.
      for (std::int64_t a = -max_coeff; a <= max_coeff; ++a) {
        if (a != 0) z_candidate(a, 0, a, 0);
      }
      break;
    }
    case 3: {
      const auto spf = detail::spf_sieve(static_cast<std::uint32_t>(max_coeff));
      auto emit = [&](std::int64_t z1, std::int64_t z2, std::int64_t a, std::int64_t b,
                      std::int64_t, std::int64_t) { z_candidate(z1, z2, a, b); };
      walk_order3(max_coeff, 1, max_coeff + 1, spf, emit);
      walk_order3_zero_a(max_coeff, emit);
      break;
    }
    case 5:
    case 7:
      for (const PQHit& h : verified_rare(prime, max_coeff, {})) {
        out.push_back({prime, to_big(h.pair.a), to_big(h.pair.b),
                       PQWitness{to_big(h.p), to_big(h.q), BigRational(1, h.k_den)}});
      }
      break;
    default:
      throw std::invalid_argument("prime must be one of 2, 3, 5, 7");
  }
  return out;
}

BigInt order5_a(const BigInt& p, const BigInt& q) {
  BigInt f = q * q * q * q - 12 * q * q * q * p + 14 * q * q * p * p + 12 * p * p * p * q +
             p * p * p * p;
  return -27 * f;
}

BigInt order5_b(const BigInt& p, const BigInt& q) {
  BigInt g = q * q * q * q - 18 * q * q * q * p + 74 * q * q * p * p + 18 * p * p * p * q +
             p * p * p * p;
  return 54 * (p * p + q * q) * g;
}

BigRational order7_a(const BigInt& p, const BigInt& q, const BigRational& k) {
  BigInt s = q * q * q * q * q * q + 5 * q * q * q * q * q * p - 10 * q * q * q * q * p * p -
             15 * q * q * q * p * p * p + 30 * q * q * p * p * p * p - 11 * q * p * p * p * p * p +
             p * p * p * p * p * p;
  BigInt f = (p * p - p * q + q * q) * s;
  BigRational k4 = k * k * k * k;
  return BigRational(-27 * k4 * BigRational(f));
}

BigRational order7_b(const BigInt& p, const BigInt& q, const BigRational& k) {
  BigInt g = 0;
  for (int i = 0; i <= 12; ++i) {
    BigInt term = static_cast<long>(kG7[i]);
    for (int j = 0; j < 12 - i; ++j) term *= p;
    for (int j = 0; j < i; ++j) term *= q;
    g += term;
  }
  BigRational k6 = k * k * k * k * k * k;
  return BigRational(54 * k6 * BigRational(g));
}

double sampled_form_minimum(int prime) {
  if (prime != 5 && prime != 7) throw std::invalid_argument("forms exist for p = 5, 7 only");
  auto compute = [](int pr) {
    constexpr int kSamples = 1'000'000;
    double best = INFINITY;
    // Even total degree: half a turn covers the circle.
    for (int i = 0; i < kSamples; ++i) {
      const double t = std::numbers::pi * i / kSamples;
      best = std::min(best, eval_real(pr, std::cos(t), std::sin(t)));
    }
    return best;
  };
  static const double m5 = compute(5);
  static const double m7 = compute(7);
  return prime == 5 ? m5 : m7;
}

std::int64_t safe_box_half_width(int prime, std::int64_t max_coeff) {
  check_bound(max_coeff);
  const double m = 0.9 * sampled_form_minimum(prime);
  if (!(m > 0)) throw InvariantViolation("forms share a real root; no safe box exists");
  // p = 5: max(|A|, |B|) >= 27 r^4 m.
  // p = 7: max(|A|, |B|) >= min(27 k^4, 54 k^6) r^8 m over k in {1, 1/3} = (2/27) r^8 m.
  const double r = prime == 5
                       ? std::pow(static_cast<double>(max_coeff) / (27.0 * m), 0.25)
                       : std::pow(static_cast<double>(max_coeff) / ((2.0 / 27.0) * m), 0.125);
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(r)));
}

BigInt resultant(std::span<const BigInt> f, std::span<const BigInt> g) {
  const std::size_t m = f.size() - 1, n = g.size() - 1;
  const std::size_t size = m + n;
  std::vector<std::vector<BigInt>> mat(size, std::vector<BigInt>(size, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= m; ++j) mat[i][i + j] = f[j];
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= n; ++j) mat[n + i][i + j] = g[j];
  }
  // Bareiss fraction-free elimination.
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < size; ++k) {
    if (mat[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < size && mat[swap][k] == 0) ++swap;
      if (swap == size) return 0;
      std::swap(mat[k], mat[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < size; ++i) {
      for (std::size_t j = k + 1; j < size; ++j) {
        mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]) / prev;
      }
      mat[i][k] = 0;
    }
    prev = mat[k][k];
  }
  return sign * mat[size - 1][size - 1];
}

BigInt form_resultant(int prime) {
  if (prime == 5) {
    const std::vector<BigInt> f{1, -12, 14, 12, 1};
    const std::vector<BigInt> g{1, -18, 74, 18, 1};
    return resultant(f, g);
  }
  if (prime == 7) {
    // F7(1, t) = (t^2 - t + 1) * (t^6 + 5t^5 - 10t^4 - 15t^3 + 30t^2 - 11t + 1)
    const std::vector<long> quad{1, -1, 1};
    const std::vector<long> sext{1, 5, -10, -15, 30, -11, 1};
    std::vector<BigInt> f(quad.size() + sext.size() - 1, 0);
    for (std::size_t i = 0; i < quad.size(); ++i) {
      for (std::size_t j = 0; j < sext.size(); ++j) f[i + j] += quad[i] * sext[j];
    }
    // G7(1, t): coefficient of t^i is kG7[i]; list from t^12 down.
    std::vector<BigInt> g;
    for (int i = 12; i >= 0; --i) g.emplace_back(static_cast<long>(kG7[i]));
    return resultant(f, g);
  }
  throw std::invalid_argument("forms exist for p = 5, 7 only");
}

}  // namespace tcensus
