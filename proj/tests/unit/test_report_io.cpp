#include "doctest.h"
#include "json.hpp"
#include "tcensus/report_io.hpp"

using namespace tcensus;

namespace {

CensusReport census(std::int64_t m, CountMode mode = CountMode::kPairs) {
  CensusConfig c;
  c.max_coeff = m;
  c.mode = mode;
  return run_census(c);
}

}  // namespace

TEST_CASE("census CSV layout") {
  const std::string csv = io::census_csv(census(100));
  CHECK(csv ==
        "M,p,count,bound,mode\n"
        "100,2,1278,1842.1,pairs\n"
        "100,3,33,1842.1,pairs\n"
        "100,5,0,98.6,pairs\n"
        "100,7,0,110.4,pairs\n"
        "100,union,1307,3893.2,pairs\n");

  const std::string small = io::census_csv(census(1));
  CHECK(small.find("1,2,") != std::string::npos);
  CHECK(small.find("1,union,") != std::string::npos);
  // no bounds below M = 2
  CHECK(small.find(",,pairs\n") != std::string::npos);
}

TEST_CASE("census CSV at M = 10^4 renders bounds to one decimal") {
  const std::string csv = io::census_csv(census(10000));
  CHECK(csv.find("10000,2,225218,368413.6,pairs\n") != std::string::npos);
  CHECK(csv.find("10000,5,1,1096.8,pairs\n") != std::string::npos);
}

TEST_CASE("census JSON round trip") {
  for (CountMode mode : {CountMode::kPairs, CountMode::kMinimalPairs}) {
    CensusReport r = census(300, mode);
    const std::string text = io::census_json(r, true);
    const CensusReport back = io::parse_census(text);
    CHECK(back.max_coeff == r.max_coeff);
    CHECK(back.mode == r.mode);
    CHECK(back.c_count == r.c_count);
    CHECK(back.t_counts == r.t_counts);
    CHECK(back.t_union == r.t_union);
    REQUIRE(back.bounds.size() == r.bounds.size());
    for (const auto& [p, b] : r.bounds) CHECK(back.bounds.at(p) == doctest::Approx(b).epsilon(1e-14));
    REQUIRE(back.timings.size() == r.timings.size());
    // serialising the parsed report gives the same bytes
    CHECK(io::census_json(back, true) == text);
  }
}

TEST_CASE("census JSON is deterministic and hides timings by default") {
  const std::string a = io::census_json(census(500));
  const std::string b = io::census_json(census(500));
  CHECK(a == b);
  CHECK(a.find("timings") == std::string::npos);
  const auto j = nlohmann::json::parse(a);
  CHECK(j.at("density").at("exact") == "8197/1001988");
  CHECK(j.at("t_counts").at("2") == 8122);
  // keys in a stable order
  std::string previous;
  for (const auto& [key, value] : j.items()) {
    CHECK(previous < key);
    previous = key;
  }
}

TEST_CASE("census CSV parses back") {
  const CensusReport r = census(200);
  const CensusReport back = io::parse_census(io::census_csv(r));
  CHECK(back.max_coeff == 200);
  CHECK(back.t_counts == r.t_counts);
  CHECK(back.t_union == r.t_union);
  CHECK(back.c_count == r.c_count);
  CHECK_THROWS_AS(io::parse_census("M,p\n1,2\n"), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_census("M,p,count,bound,mode\n"), std::invalid_argument);
}

TEST_CASE("bounds rendering") {
  const BoundsReport r = make_bounds_report(10000);
  const std::string csv = io::bounds_csv(r);
  CHECK(csv.rfind("M,quantity,value\n", 0) == 0);
  CHECK(csv.find("10000,prime_zeta_4,0.0769931") != std::string::npos);
  CHECK(csv.find("10000,prime_zeta_6,0.01707008") != std::string::npos);
  CHECK(csv.find("10000,torsion_bound_p2,368413.614879047\n") != std::string::npos);

  const std::string json = io::bounds_json(r);
  const BoundsReport back = io::parse_bounds_json(json);
  CHECK(back.max_coeff == r.max_coeff);
  CHECK(back.schmidt.size() == r.schmidt.size());
  CHECK(back.prime_zeta_4 == doctest::Approx(r.prime_zeta_4).epsilon(1e-14));
  CHECK(io::bounds_json(back) == json);
}

TEST_CASE("comparison rendering") {
  const CensusReport c = census(1000);
  const auto rows = emit_comparison(c, make_bounds_report(1000));
  const std::string csv = io::comparison_csv(1000, rows);
  CHECK(csv.rfind("M,p,count,bound,ratio\n1000,2,17718,27631.0,", 0) == 0);
  CHECK(csv.find("\n# ") != std::string::npos);
  const auto j = nlohmann::json::parse(io::comparison_json(1000, rows));
  CHECK(j.at("rows").size() == 4);
  CHECK(j.contains("note"));
}

TEST_CASE("torsion rendering") {
  const CurvePair e(-43, 166);
  const TorsionGroup g = torsion_subgroup(e);
  CHECK(io::torsion_text(g) == "Z/7Z, generator (3,8)");
  CHECK(io::torsion_text(torsion_subgroup(CurvePair(1, 1))) == "trivial");
  CHECK(io::torsion_text(torsion_subgroup(CurvePair(-1, 0))) ==
        "Z/2Z x Z/2Z, generators (0,0), (-1,0)");
  const auto j = nlohmann::json::parse(io::torsion_json(e, g));
  CHECK(j.at("structure") == "Z/7Z");
  CHECK(j.at("order") == 7);
  CHECK(j.at("points").size() == 7);
  CHECK(j.at("generators").at(0) == "(3,8)");
}

TEST_CASE("format names") {
  CHECK(io::parse_format("csv") == io::Format::kCsv);
  CHECK(io::parse_format("json") == io::Format::kJson);
  CHECK(io::parse_format("text") == io::Format::kText);
  CHECK_THROWS_AS(io::parse_format("xml"), std::invalid_argument);
}
