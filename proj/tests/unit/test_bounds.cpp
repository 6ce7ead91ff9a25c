#include <cmath>
#include <numbers>

#include "doctest.h"
#include "tcensus/bounds.hpp"
#include "tcensus/census.hpp"
#include "tcensus/error.hpp"

using namespace tcensus;

namespace {

std::int64_t brute_Pn(std::int64_t m, int n) {
  std::int64_t count = 0;
  for (std::int64_t x = 1; x <= m; ++x) {
    for (std::int64_t l = 2; std::pow(static_cast<double>(l), n) <= x; ++l) {
      bool prime = true;
      for (std::int64_t d = 2; d * d <= l; ++d) prime = prime && (l % d != 0);
      if (!prime) continue;
      std::int64_t ln = 1;
      for (int i = 0; i < n; ++i) ln *= l;
      if (x % ln == 0) {
        ++count;
        break;
      }
    }
  }
  return count;
}

}  // namespace

TEST_CASE("schmidt_bound") {
  CHECK(schmidt_bound(4, 4, 1e4) == doctest::Approx(1096.8333239758608).epsilon(1e-12));
  CHECK(schmidt_bound(4, 4, std::numbers::e) == doctest::Approx(8 * std::sqrt(std::numbers::e)));
  CHECK(schmidt_bound(6, 6, 1e4) == doctest::Approx(316.419255479913).epsilon(1e-12));
  CHECK_THROWS_AS(schmidt_bound(3, 4, 10), std::invalid_argument);
  CHECK_THROWS_AS(schmidt_bound(4, 0, 10), std::invalid_argument);
  CHECK_THROWS_AS(schmidt_bound(4, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(schmidt_bound(4, 4, 0.5), std::invalid_argument);
}

TEST_CASE("torsion_bound") {
  CHECK(torsion_bound(2, 10000) == doctest::Approx(368413.6148790473).epsilon(1e-12));
  CHECK(torsion_bound(3, 10000) == torsion_bound(2, 10000));
  CHECK(torsion_bound(5, 10000) == doctest::Approx(1096.8333239758608).epsilon(1e-12));
  CHECK(torsion_bound(7, 10000) == doctest::Approx(245.4380690086614).epsilon(1e-12));
  for (std::int64_t m : {2, 3, 10, 1000, 123456, 10000000}) {
    const double dm = static_cast<double>(m);
    CHECK(torsion_bound(5, m) == schmidt_bound(4, 4, dm));
    CHECK(torsion_bound(5, m) ==
          doctest::Approx(4 * std::sqrt(dm) * (1 + std::pow(std::log(dm), 0.25))));
    CHECK(torsion_bound(7, m) ==
          doctest::Approx(24 * std::pow(dm, 1.0 / 6) * (1 + std::pow(std::log(dm), 1.0 / 12))));
    for (int p : {2, 3, 5, 7}) {
      CHECK(std::isfinite(torsion_bound(p, m)));
      CHECK(torsion_bound(p, m) > 0);
    }
  }
  CHECK_THROWS_AS(torsion_bound(11, 100), std::invalid_argument);
  CHECK_THROWS_AS(torsion_bound(2, 1), std::invalid_argument);
}

TEST_CASE("prime_zeta") {
  CHECK(std::fabs(prime_zeta(4) - 0.0769931) < 1e-6);
  CHECK(std::fabs(prime_zeta(6) - 0.0170701) < 1e-6);
  CHECK(std::fabs(prime_zeta(2, 1e-7) - 0.4522474) < 1e-6);
  double previous = 1;
  for (int n = 2; n <= 12; ++n) {
    const double v = prime_zeta(n, 1e-7);
    CHECK(v < previous);
    previous = v;
  }
  // the cutoff rule: doubling it moves the value by less than tol
  for (int n : {3, 4, 6}) {
    const double tol = 1e-9;
    const double cutoff = std::ceil(std::pow(1.0 / (tol * (n - 1)), 1.0 / (n - 1)));
    double extra = 0;
    for (std::uint32_t l : detail::primes_up_to(static_cast<std::uint32_t>(2 * cutoff))) {
      if (l > cutoff) extra += std::pow(static_cast<double>(l), -n);
    }
    CHECK(extra < tol);
  }
  CHECK_THROWS_AS(prime_zeta(1), std::invalid_argument);
  CHECK_THROWS_AS(prime_zeta(4, 0), std::invalid_argument);
}

TEST_CASE("count_Pn") {
  CHECK(count_Pn(16, 4) == 1);
  CHECK(count_Pn(15, 4) == 0);
  CHECK(count_Pn(100, 4) == 7);
  CHECK(count_Pn(1, 2) == 0);
  for (std::int64_t m : {1, 50, 999, 5000}) {
    for (int n : {2, 3, 4, 6}) {
      CAPTURE(m);
      CAPTURE(n);
      CHECK(count_Pn(m, n) == brute_Pn(m, n));
    }
  }
  for (std::int64_t m : {1000, 10000}) {
    for (int n : {4, 6}) {
      const double root = std::floor(std::pow(static_cast<double>(m), 1.0 / n) + 1e-9);
      const double pi_root = static_cast<double>(detail::primes_up_to(static_cast<std::uint32_t>(root)).size());
      CHECK(count_Pn(m, n).get_d() <= prime_zeta(n) * m + root * pi_root);
    }
  }
  for (int n : {4, 6}) {
    const double ratio = count_Pn(1000000, n).get_d() / 1e6;
    CHECK(std::fabs(ratio - prime_zeta(n)) / prime_zeta(n) < 0.05);
  }
  CHECK_THROWS_AS(count_Pn(0, 4), std::invalid_argument);
  CHECK_THROWS_AS(count_Pn(10, 1), std::invalid_argument);
}

TEST_CASE("iso_adjusted_c_lower") {
  CHECK(iso_adjusted_c_lower(1) == doctest::Approx(3.99868572).epsilon(1e-8));
  CHECK(iso_adjusted_c_lower(1000) == doctest::Approx(3.99868572e6).epsilon(1e-8));
  CensusConfig c;
  c.max_coeff = 1000;
  c.mode = CountMode::kMinimalPairs;
  c.primes = {7};
  CHECK(count_C_minimal(1000).get_d() >= iso_adjusted_c_lower(1000));
  CHECK(run_census(c).c_count.get_d() >= iso_adjusted_c_lower(1000));
}

TEST_CASE("bounds report") {
  for (std::int64_t m : {2, 100, 10000}) {
    const BoundsReport r = make_bounds_report(m);
    CHECK(r.max_coeff == m);
    CHECK(r.torsion_bounds.size() == 4);
    for (const auto& [p, b] : r.torsion_bounds) {
      CHECK(std::isfinite(b));
      CHECK(b > 0);
    }
    REQUIRE(r.schmidt.size() == 2);
    for (const auto& s : r.schmidt) {
      CHECK(s.bound_loose == r.torsion_bounds.at(s.prime));
      CHECK(std::isfinite(s.bound_tight));
      CHECK(s.bound_tight > 0);
      CHECK(s.h_loose == static_cast<double>(m));
    }
    CHECK(r.schmidt[0].r == 4);
    CHECK(r.schmidt[1].r == 12);
    CHECK(r.c_lower_pairs == 4.0 * m * m - 1);
    CHECK(r.c_lower_iso < 4.0 * m * m);
    CHECK(count_C(m).get_d() >= r.c_lower_pairs);
  }
  CHECK_THROWS_AS(make_bounds_report(1), std::invalid_argument);
}

TEST_CASE("emit_comparison") {
  CensusConfig c;
  c.max_coeff = 10000;
  const CensusReport census = run_census(c);
  const auto rows = emit_comparison(census, make_bounds_report(10000));
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) {
    CHECK(row.ratio < 1);
    CHECK(row.count.get_d() <= row.bound);
  }
  CHECK(rows[2].prime == 5);
  CHECK(rows[2].count == 1);

  CensusReport inflated = census;
  inflated.t_counts[7] = 1000;
  CHECK_THROWS_AS(emit_comparison(inflated, make_bounds_report(10000)), InvariantViolation);
  CHECK_THROWS_AS(emit_comparison(census, make_bounds_report(9999)), InvariantViolation);
}
