#pragma once

// Closed-form upper bounds for |T_p(M)| and the prime-zeta machinery used to
// bound the isomorphism-class overcount.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tcensus/exact_arith.hpp"

namespace tcensus {

struct CensusReport;

// Solution bound for |F(x, y)| <= h, F irreducible of degree r > 3 with at
// most s + 1 nonzero coefficients: sqrt(r s) h^(2/r) (1 + log(h)^(1/r)).
// Throws std::invalid_argument unless r > 3, s >= 1, h > 1.
double schmidt_bound(int r, int s, double h);

// 4 M log M (p = 2, 3), 4 sqrt(M) (1 + log(M)^(1/4)) (p = 5),
// 24 M^(1/6) (1 + log(M)^(1/12)) (p = 7). Requires M >= 2.
double torsion_bound(int prime, std::int64_t max_coeff);

// Sum of l^-n over primes l <= L, where L is the smallest cutoff with
// L^(1-n) / (n-1) < tol; the result is within tol of P(n).
double prime_zeta(int n, double tol = 1e-8);

// #{1 <= x <= M : l^n | x for some prime l}, by inclusion-exclusion.
BigInt count_Pn(std::int64_t max_coeff, int n);

// (4 - P(4) P(6)) M^2
double iso_adjusted_c_lower(std::int64_t max_coeff);

struct SchmidtInputs {
  int prime = 0;
  int r = 0;
  int s = 0;
  // Multiplicity: how many Schmidt-bounded forms the prime's bound sums.
  int forms = 1;
  double h_loose = 0;  // h = M
  double h_tight = 0;  // the actual form bound after dividing out constants
  double bound_loose = 0;
  double bound_tight = 0;
};

struct BoundsReport {
  std::int64_t max_coeff = 0;
  std::map<int, double> torsion_bounds;
  std::vector<SchmidtInputs> schmidt;
  double prime_zeta_4 = 0;
  double prime_zeta_6 = 0;
  double c_lower_pairs = 0;  // 4 M^2 - 1
  double c_lower_iso = 0;    // (4 - P(4) P(6)) M^2
};

BoundsReport make_bounds_report(std::int64_t max_coeff);

struct ComparisonRow {
  int prime = 0;
  BigInt count;
  double bound = 0;
  double ratio = 0;
};

// One row per prime present in both reports; throws InvariantViolation if a
// count exceeds its bound or the reports disagree on M.
std::vector<ComparisonRow> emit_comparison(const CensusReport& census,
                                           const BoundsReport& bounds);

}  // namespace tcensus
