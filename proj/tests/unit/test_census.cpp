#include "doctest.h"
#include "tcensus/census.hpp"
#include "tcensus/elliptic.hpp"

using namespace tcensus;

namespace {

std::int64_t singular_scan(std::int64_t m) {
  std::int64_t n = 0;
  for (std::int64_t a = -m; a <= m; ++a) {
    for (std::int64_t b = -m; b <= m; ++b) {
      if (4 * a * a * a + 27 * b * b == 0) ++n;
    }
  }
  return n;
}

CensusConfig config_for(std::int64_t m) {
  CensusConfig c;
  c.max_coeff = m;
  return c;
}

}  // namespace

TEST_CASE("count_C") {
  CHECK(count_C(1) == 8);
  CHECK(count_C(1) >= 3);
  for (std::int64_t m : {1, 2, 3, 10, 12, 100, 1000}) {
    const BigInt side = 2 * m + 1;
    CHECK(count_C(m) == side * side - singular_scan(m));
    CHECK(count_C(m) >= 4 * BigInt(m) * m - 1);
  }
  CHECK(count_C(10000) == BigInt("400039966"));
  CHECK_THROWS_AS(count_C(0), std::invalid_argument);
}

TEST_CASE("count_C_minimal matches a scan") {
  for (std::int64_t m : {1, 16, 64, 100, 300, 1000}) {
    std::int64_t n = 0;
    for (std::int64_t a = -m; a <= m; ++a) {
      for (std::int64_t b = -m; b <= m; ++b) {
        if (4 * a * a * a + 27 * b * b == 0) continue;
        if (detail::is_minimal_pair_i64(a, b)) ++n;
      }
    }
    CAPTURE(m);
    CHECK(count_C_minimal(m) == n);
  }
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(config_for(0).validate(), std::invalid_argument);
  CensusConfig c = config_for(1001);
  c.oracle = true;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = config_for(10);
  c.primes = {2, 11};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.primes = {3, 3};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.primes = {7};
  c.workers = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.workers = 2;
  CHECK_NOTHROW(c.validate());

  CHECK(parse_count_mode("pairs") == CountMode::kPairs);
  CHECK(parse_count_mode("minimal") == CountMode::kMinimalPairs);
  CHECK_THROWS_AS(parse_count_mode("classes"), std::invalid_argument);
  CHECK(to_string(CountMode::kMinimalPairs) == "minimal");
}

TEST_CASE("census at M = 100") {
  const CensusReport r = run_census(config_for(100));
  CHECK(r.c_count == 40394);
  CHECK(r.t_counts.at(2) == 1278);
  CHECK(r.t_counts.at(3) == 33);
  CHECK(r.t_counts.at(5) == 0);
  CHECK(r.t_counts.at(7) == 0);
  CHECK(r.t_union == 1307);
  CHECK(r.bounds.size() == 4);
  const Density d = density(r);
  CHECK(d.exact == BigRational(1307, 40394));
  CHECK(d.decimal == "0.0323562905381987");
}

TEST_CASE("generator census equals the oracle scan") {
  for (std::int64_t m : {1, 7, 40}) {
    for (CountMode mode : {CountMode::kPairs, CountMode::kMinimalPairs}) {
      CensusConfig fast = config_for(m);
      fast.mode = mode;
      CensusConfig slow = fast;
      slow.oracle = true;
      const CensusSets a = census_sets(fast);
      const CensusSets b = census_sets(slow);
      CHECK(a.by_prime == b.by_prime);
      CHECK(a.all == b.all);
      CHECK(run_census(fast).same_counts([&] {
        CensusReport r = run_census(slow);
        r.oracle = false;
        return r;
      }()));
    }
  }
}

TEST_CASE("a subset of primes") {
  CensusConfig c = config_for(1000);
  c.primes = {7, 3};
  const CensusReport r = run_census(c);
  CHECK(r.t_counts.size() == 2);
  CHECK(r.t_counts.at(7) == 1);
  CHECK(r.t_counts.at(3) == 147);
  CHECK(r.t_union == 148);
}

TEST_CASE("minimal mode") {
  CensusConfig c = config_for(1000);
  c.mode = CountMode::kMinimalPairs;
  const CensusReport r = run_census(c);
  CHECK(r.c_count == count_C_minimal(1000));
  CHECK(r.t_counts.at(2) <= 17718);
  for (const auto& pair : census_sets(c).all) {
    CHECK(detail::is_minimal_pair_i64(pair.a, pair.b));
  }
}

TEST_CASE("union bounds and density trend") {
  BigRational previous = 1;
  for (std::int64_t m : {10, 100, 1000, 10000}) {
    const CensusReport r = run_census(config_for(m));
    BigInt sum = 0, top = 0;
    for (const auto& [p, n] : r.t_counts) {
      sum += n;
      if (n > top) top = n;
    }
    CHECK(r.t_union <= sum);
    CHECK(r.t_union >= top);
    const BigRational d = density(r).exact;
    if (m > 10) CHECK(d < previous);
    previous = d;
  }
}

TEST_CASE("worker count does not change the report") {
  CensusConfig c = config_for(5000);
  const CensusReport one = run_census(c);
  for (unsigned w : {4u, 16u}) {
    c.workers = w;
    CHECK(run_census(c).same_counts(one));
  }
  c = config_for(200);
  c.oracle = true;
  const CensusReport slow1 = run_census(c);
  c.workers = 4;
  CHECK(run_census(c).same_counts(slow1));
}

TEST_CASE("format_real") {
  CHECK(format_real(0.5) == "0.5");
  CHECK(format_real(368413.6075231) == "368413.6075231");
  CHECK(format_real(1.0 / 3.0) == "0.333333333333333");
  CHECK(format_real(BigRational(1, 3)) == "0.333333333333333");
  CHECK(format_real(BigRational(2, 3)) == "0.666666666666667");
  CHECK(format_real(BigRational(225915, 400039966)) == format_real(225915.0 / 400039966.0));
}
