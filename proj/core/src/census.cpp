#include "tcensus/census.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <stdexcept>

#include "parallel.hpp"
#include "tcensus/bounds.hpp"
#include "tcensus/elliptic.hpp"
#include "tcensus/error.hpp"

namespace tcensus {

std::string to_string(CountMode mode) {
  return mode == CountMode::kPairs ? "pairs" : "minimal";
}

CountMode parse_count_mode(const std::string& text) {
  if (text == "pairs") return CountMode::kPairs;
  if (text == "minimal") return CountMode::kMinimalPairs;
  throw std::invalid_argument("unknown mode '" + text + "' (expected pairs or minimal)");
}

void CensusConfig::validate() const {
  if (max_coeff < 1) throw std::invalid_argument("--max must be at least 1");
  if (max_coeff > 1'000'000'000) throw std::invalid_argument("--max above 10^9 is not supported");
  if (oracle && max_coeff > kOracleLimit) {
    throw std::invalid_argument("oracle mode requires --max <= " + std::to_string(kOracleLimit));
  }
  if (workers < 1) throw std::invalid_argument("--workers must be at least 1");
  std::vector<int> seen;
  for (int p : primes) {
    if (p != 2 && p != 3 && p != 5 && p != 7) {
      throw std::invalid_argument("prime " + std::to_string(p) + " is not one of 2, 3, 5, 7");
    }
    if (std::find(seen.begin(), seen.end(), p) != seen.end()) {
      throw std::invalid_argument("prime " + std::to_string(p) + " listed twice");
    }
    seen.push_back(p);
  }
}

bool CensusReport::same_counts(const CensusReport& o) const {
  return max_coeff == o.max_coeff && mode == o.mode && c_count == o.c_count &&
         t_counts == o.t_counts && t_union == o.t_union && bounds == o.bounds;
}

BigInt count_C(std::int64_t max_coeff) {
  if (max_coeff < 1) throw std::invalid_argument("count_C: M must be >= 1");
  // (0,0) plus (-3k^2, +-2k^3) for each k >= 1 fitting the box.
  std::int64_t singular = 1;
  for (std::int64_t k = 1; 3 * k * k <= max_coeff && 2 * k * k * k <= max_coeff; ++k) {
    singular += 2;
  }
  const BigInt side = 2 * to_big(max_coeff) + 1;
  return side * side - singular;
}

BigInt count_C_minimal(std::int64_t max_coeff) {
  if (max_coeff < 1) throw std::invalid_argument("count_C_minimal: M must be >= 1");
  // Mobius over squarefree d: pairs != (0,0) with d^4 | A and d^6 | B.
  BigInt total = 0;
  for (std::int64_t d = 1; d * d * d * d <= max_coeff; ++d) {
    int mu = 1;
    std::int64_t rest = d;
    bool squarefree = true;
    for (std::int64_t p = 2; p * p <= rest; ++p) {
      if (rest % p) continue;
      rest /= p;
      if (rest % p == 0) {
        squarefree = false;
        break;
      }
      mu = -mu;
    }
    if (!squarefree) continue;
    if (rest > 1) mu = -mu;
    const std::int64_t d4 = d * d * d * d;
    const std::int64_t na = 2 * (max_coeff / d4) + 1;
    const std::int64_t nb = d4 * d * d <= max_coeff ? 2 * (max_coeff / (d4 * d * d)) + 1 : 1;
    total += mu * (to_big(na) * nb - 1);
  }
  // Singular (-3k^2, +-2k^3) is minimal exactly when k is squarefree.
  for (std::int64_t k = 1; 3 * k * k <= max_coeff && 2 * k * k * k <= max_coeff; ++k) {
    bool squarefree = true;
    for (std::int64_t p = 2; p * p <= k; ++p) {
      if (k % (p * p) == 0) {
        squarefree = false;
        break;
      }
    }
    if (squarefree) total -= 2;
  }
  return total;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool keep_minimal(const CoeffPair& p) { return detail::is_minimal_pair_i64(p.a, p.b); }

TorsionGroup torsion_of(std::int64_t a, std::int64_t b) {
  if (auto g = detail::torsion_subgroup_small(a, b)) return std::move(*g);
  return detail::torsion_subgroup_generic(CurvePair(a, b));
}

constexpr std::size_t kChunks = 64;

struct OracleResult {
  std::map<int, CurveSet> by_prime;
  BigInt c_count;
};

OracleResult oracle_scan(const CensusConfig& config) {
  const std::int64_t m = config.max_coeff;
  const bool minimal_only = config.mode == CountMode::kMinimalPairs;
  struct Part {
    std::map<int, std::vector<CoeffPair>> hits;
    std::int64_t nonsingular = 0;
  };
  std::vector<Part> parts(kChunks);
  detail::parallel_chunks(
      -m, m + 1, kChunks, config.workers, [&](std::int64_t lo, std::int64_t hi, std::size_t c) {
        Part& part = parts[c];
        for (std::int64_t a = lo; a < hi; ++a) {
          for (std::int64_t b = -m; b <= m; ++b) {
            if (discriminant(to_big(a), to_big(b)) == 0) continue;
            if (minimal_only && !detail::is_minimal_pair_i64(a, b)) continue;
            ++part.nonsingular;
            const TorsionGroup g = torsion_of(a, b);
            for (int p : config.primes) {
              if (g.has_point_of_order(p)) part.hits[p].push_back({a, b});
            }
          }
        }
      });
  OracleResult out;
  std::int64_t c = 0;
  std::map<int, std::vector<CoeffPair>> merged;
  for (auto& part : parts) {
    c += part.nonsingular;
    for (auto& [p, v] : part.hits) merged[p].insert(merged[p].end(), v.begin(), v.end());
  }
  for (int p : config.primes) out.by_prime[p] = CurveSet(std::move(merged[p]));
  out.c_count = to_big(c);
  return out;
}

// Recomputes the torsion of every curve in the union and checks that the
// generator sets agree with it prime by prime.
void verify_sets(const CensusConfig& config, const CensusSets& sets) {
  const auto all = sets.all.pairs();
  detail::parallel_chunks(
      0, static_cast<std::int64_t>(all.size()), kChunks, config.workers,
      [&](std::int64_t lo, std::int64_t hi, std::size_t) {
        for (std::int64_t i = lo; i < hi; ++i) {
          const CoeffPair& pair = all[static_cast<std::size_t>(i)];
          const TorsionGroup g = torsion_of(pair.a, pair.b);
          for (const auto& [p, set] : sets.by_prime) {
            if (g.has_point_of_order(p) != set.contains(pair)) {
              throw InvariantViolation("generator for p=" + std::to_string(p) +
                                       " disagrees with the torsion oracle at (" +
                                       std::to_string(pair.a) + "," + std::to_string(pair.b) +
                                       "), torsion " + g.structure.to_string());
            }
          }
        }
      });
}

}  // namespace

CensusSets census_sets(const CensusConfig& config, std::vector<PhaseTiming>* timings) {
  config.validate();
  CensusSets sets;
  auto t0 = Clock::now();
  if (config.oracle) {
    OracleResult r = oracle_scan(config);
    sets.by_prime = std::move(r.by_prime);
    if (timings) timings->push_back({"oracle_scan", seconds_since(t0)});
  } else {
    GenOptions opts;
    opts.workers = config.workers;
    for (int p : config.primes) {
      CurveSet s = generate(p, config.max_coeff, opts);
      if (config.mode == CountMode::kMinimalPairs) s = s.filtered(keep_minimal);
      sets.by_prime[p] = std::move(s);
    }
    if (timings) timings->push_back({"generate", seconds_since(t0)});
  }
  std::vector<const CurveSet*> parts;
  for (const auto& [p, s] : sets.by_prime) parts.push_back(&s);
  sets.all = set_union(parts);
  if (config.verify_torsion && !config.oracle) {
    t0 = Clock::now();
    verify_sets(config, sets);
    if (timings) timings->push_back({"verify", seconds_since(t0)});
  }
  return sets;
}

CensusReport run_census(const CensusConfig& config) {
  config.validate();
  CensusReport report;
  report.max_coeff = config.max_coeff;
  report.mode = config.mode;
  report.oracle = config.oracle;

  std::optional<BigInt> scanned_c;
  if (config.oracle) {
    // The scan counts C(M) itself; keep it so the closed form is cross-checked.
    auto t0 = Clock::now();
    OracleResult r = oracle_scan(config);
    report.timings.push_back({"oracle_scan", seconds_since(t0)});
    std::vector<const CurveSet*> parts;
    for (const auto& [p, s] : r.by_prime) {
      report.t_counts[p] = static_cast<unsigned long>(s.size());
      parts.push_back(&s);
    }
    report.t_union = static_cast<unsigned long>(set_union(parts).size());
    scanned_c = r.c_count;
  } else {
    const CensusSets sets = census_sets(config, &report.timings);
    for (const auto& [p, s] : sets.by_prime) report.t_counts[p] = static_cast<unsigned long>(s.size());
    report.t_union = static_cast<unsigned long>(sets.all.size());
  }

  auto t0 = Clock::now();
  report.c_count = config.mode == CountMode::kPairs ? count_C(config.max_coeff)
                                                    : count_C_minimal(config.max_coeff);
  if (scanned_c && *scanned_c != report.c_count) {
    throw InvariantViolation("closed-form |C(M)| = " + report.c_count.get_str() +
                             " but the scan found " + scanned_c->get_str());
  }
  report.timings.push_back({"count_c", seconds_since(t0)});

  if (config.max_coeff >= 2) {
    for (int p : config.primes) report.bounds[p] = torsion_bound(p, config.max_coeff);
  }

  BigInt sum = 0, largest = 0;
  for (const auto& [p, n] : report.t_counts) {
    sum += n;
    largest = std::max(largest, n);
  }
  if (report.t_union > sum || report.t_union < largest) {
    throw InvariantViolation("union count outside [max_p |T_p|, sum_p |T_p|]");
  }
  return report;
}

Density density(const CensusReport& report) {
  Density d;
  if (report.c_count == 0) throw std::invalid_argument("density: empty curve box");
  d.exact = BigRational(report.t_union, report.c_count);
  d.exact.canonicalize();
  d.decimal = format_real(d.exact);
  return d;
}

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return buf;
}

std::string format_real(const BigRational& value) {
  mpf_class f(0, 256);
  f = value;
  char buf[128];
  gmp_snprintf(buf, sizeof buf, "%.15Fg", f.get_mpf_t());
  return buf;
}

}  // namespace tcensus
