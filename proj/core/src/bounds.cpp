#include "tcensus/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "tcensus/census.hpp"
#include "tcensus/error.hpp"

namespace tcensus {

double schmidt_bound(int r, int s, double h) {
  if (r <= 3) throw std::invalid_argument("schmidt_bound: degree must exceed 3");
  if (s < 1) throw std::invalid_argument("schmidt_bound: s must be positive");
  if (!(h > 1)) throw std::invalid_argument("schmidt_bound: h must exceed 1");
  const double rs = static_cast<double>(r) * s;
  return std::sqrt(rs) * std::pow(h, 2.0 / r) * (1 + std::pow(std::log(h), 1.0 / r));
}

double torsion_bound(int prime, std::int64_t max_coeff) {
  if (max_coeff < 2) throw std::invalid_argument("torsion_bound: M must be at least 2");
  const double m = static_cast<double>(max_coeff);
  switch (prime) {
    case 2:
    case 3:
      return 4 * m * std::log(m);
    case 5:
      return schmidt_bound(4, 4, m);
    case 7:
      // one Schmidt term for each k in {1, 1/3}
      return 2 * schmidt_bound(12, 12, m);
    default:
      throw std::invalid_argument("torsion_bound: prime must be 2, 3, 5 or 7");
  }
}

double prime_zeta(int n, double tol) {
  if (n < 2) throw std::invalid_argument("prime_zeta: n must be at least 2");
  if (!(tol > 0)) throw std::invalid_argument("prime_zeta: tol must be positive");
  // Tail over primes > L is below the integral of x^-n from L.
  const double cutoff = std::ceil(std::pow(1.0 / (tol * (n - 1)), 1.0 / (n - 1)));
  if (cutoff > 4e9) throw std::invalid_argument("prime_zeta: tolerance too small");
  const auto primes = detail::primes_up_to(static_cast<std::uint32_t>(std::max(cutoff, 2.0)));
  double sum = 0;
  for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
    sum += std::pow(static_cast<double>(*it), -n);
  }
  return sum;
}

namespace {

std::uint64_t ipow(std::uint64_t base, int n, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (int i = 0; i < n; ++i) {
    if (v > cap / base) return cap + 1;
    v *= base;
  }
  return v;
}

// Sum over nonempty squarefree products d of the primes from index i on, with
// d^n <= M / base, of (-1)^(|d|+1) floor(M / (base * d^n)).
void inclusion_exclusion(std::uint64_t m, const std::vector<std::uint64_t>& powers,
                         std::size_t start, std::uint64_t base, int sign, BigInt& acc) {
  for (std::size_t i = start; i < powers.size(); ++i) {
    if (powers[i] > m / base) break;
    const std::uint64_t next = base * powers[i];
    acc += sign * static_cast<long>(m / next);
    inclusion_exclusion(m, powers, i + 1, next, -sign, acc);
  }
}

}  // namespace

BigInt count_Pn(std::int64_t max_coeff, int n) {
  if (max_coeff < 1) throw std::invalid_argument("count_Pn: M must be at least 1");
  if (n < 2) throw std::invalid_argument("count_Pn: n must be at least 2");
  const auto m = static_cast<std::uint64_t>(max_coeff);
  std::uint64_t root = 1;
  while (ipow(root + 1, n, m) <= m) ++root;
  std::vector<std::uint64_t> powers;
  for (std::uint32_t l : detail::primes_up_to(static_cast<std::uint32_t>(root))) {
    powers.push_back(ipow(l, n, m));
  }
  BigInt acc = 0;
  inclusion_exclusion(m, powers, 0, 1, 1, acc);
  return acc;
}

double iso_adjusted_c_lower(std::int64_t max_coeff) {
  if (max_coeff < 1) throw std::invalid_argument("iso_adjusted_c_lower: M must be at least 1");
  const double m = static_cast<double>(max_coeff);
  return (4 - prime_zeta(4) * prime_zeta(6)) * m * m;
}

namespace {

// h <= 1 leaves only the trivial solution; evaluating at h = e still bounds it.
double schmidt_or_floor(int r, int s, double h) {
  return schmidt_bound(r, s, std::max(h, std::numbers::e));
}

}  // namespace

BoundsReport make_bounds_report(std::int64_t max_coeff) {
  if (max_coeff < 2) throw std::invalid_argument("bounds: M must be at least 2");
  BoundsReport r;
  r.max_coeff = max_coeff;
  const double m = static_cast<double>(max_coeff);
  for (int p : {2, 3, 5, 7}) r.torsion_bounds[p] = torsion_bound(p, max_coeff);

  SchmidtInputs s5;
  s5.prime = 5;
  s5.r = 4;
  s5.s = 4;
  s5.forms = 1;
  s5.h_loose = m;
  s5.h_tight = m / 27;  // |A| = 27 |F5(p,q)|
  s5.bound_loose = schmidt_bound(4, 4, m);
  s5.bound_tight = schmidt_or_floor(4, 4, s5.h_tight);
  r.schmidt.push_back(s5);

  // B = 54 k^6 G7(p,q): |G7| <= M/54 for k = 1 and <= 27M/2 for k = 1/3.
  SchmidtInputs s7;
  s7.prime = 7;
  s7.r = 12;
  s7.s = 12;
  s7.forms = 2;
  s7.h_loose = m;
  s7.h_tight = 27 * m / 2;
  s7.bound_loose = 2 * schmidt_bound(12, 12, m);
  s7.bound_tight = schmidt_or_floor(12, 12, m / 54) + schmidt_bound(12, 12, s7.h_tight);
  r.schmidt.push_back(s7);

  r.prime_zeta_4 = prime_zeta(4);
  r.prime_zeta_6 = prime_zeta(6);
  r.c_lower_pairs = 4 * m * m - 1;
  r.c_lower_iso = (4 - r.prime_zeta_4 * r.prime_zeta_6) * m * m;
  return r;
}

std::vector<ComparisonRow> emit_comparison(const CensusReport& census, const BoundsReport& bounds) {
  if (census.max_coeff != bounds.max_coeff) {
    throw InvariantViolation("comparison: census M = " + std::to_string(census.max_coeff) +
                             " but bounds M = " + std::to_string(bounds.max_coeff));
  }
  std::vector<ComparisonRow> rows;
  for (const auto& [p, count] : census.t_counts) {
    auto it = bounds.torsion_bounds.find(p);
    if (it == bounds.torsion_bounds.end()) continue;
    ComparisonRow row;
    row.prime = p;
    row.count = count;
    row.bound = it->second;
    row.ratio = count.get_d() / it->second;
    if (count.get_d() > it->second) {
      throw InvariantViolation("|T_" + std::to_string(p) + "(" + std::to_string(census.max_coeff) +
                               ")| = " + count.get_str() + " exceeds its bound " +
                               format_real(it->second));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace tcensus
