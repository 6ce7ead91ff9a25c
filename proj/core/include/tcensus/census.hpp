#pragma once

// Exact counts of C(M) (nonsingular pairs with |A|, |B| <= M), T_p(M) (pairs
// with a rational point of order p) and their union T(M).

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tcensus/exact_arith.hpp"
#include "tcensus/families.hpp"

namespace tcensus {

enum class CountMode { kPairs, kMinimalPairs };

std::string to_string(CountMode mode);               // "pairs" / "minimal"
CountMode parse_count_mode(const std::string& text);  // throws std::invalid_argument

struct CensusConfig {
  std::int64_t max_coeff = 1;
  std::vector<int> primes{2, 3, 5, 7};
  CountMode mode = CountMode::kPairs;
  // Brute-force Nagell-Lutz scan over all (2M+1)^2 pairs.
  bool oracle = false;
  unsigned workers = 1;
  // Run torsion_subgroup on every curve of T(M) and cross-check membership.
  bool verify_torsion = true;

  static constexpr std::int64_t kOracleLimit = 1000;

  // Throws std::invalid_argument describing the first problem found.
  void validate() const;
};

struct PhaseTiming {
  std::string phase;
  double seconds = 0;

  friend bool operator==(const PhaseTiming&, const PhaseTiming&) = default;
};

struct CensusReport {
  std::int64_t max_coeff = 0;
  CountMode mode = CountMode::kPairs;
  bool oracle = false;
  BigInt c_count;
  std::map<int, BigInt> t_counts;
  BigInt t_union;
  // torsion_bound(p, M) per selected prime; empty when M < 2.
  std::map<int, double> bounds;
  std::vector<PhaseTiming> timings;

  // Everything except timings.
  bool same_counts(const CensusReport& other) const;
};

// The sets behind a report.
struct CensusSets {
  std::map<int, CurveSet> by_prime;
  CurveSet all;
};

// |C(M)| = (2M+1)^2 - #{singular pairs}; the singular pairs are exactly
// (-3k^2, +-2k^3) for k >= 0.
BigInt count_C(std::int64_t max_coeff);

// Nonsingular pairs in the box that are minimal (no l^4 | A and l^6 | B).
BigInt count_C_minimal(std::int64_t max_coeff);

CensusSets census_sets(const CensusConfig& config, std::vector<PhaseTiming>* timings = nullptr);
CensusReport run_census(const CensusConfig& config);

struct Density {
  BigRational exact;  // t_union / c_count
  std::string decimal;
};

Density density(const CensusReport& report);

// 15 significant digits, "%.15g" style; deterministic across platforms.
std::string format_real(double value);
std::string format_real(const BigRational& value);

}  // namespace tcensus
