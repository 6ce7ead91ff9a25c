#pragma once

// Byte-stable CSV / JSON rendering of census, bounds, comparison and torsion
// results. Integers are exact decimals; reals carry 15 significant digits,
// except the bound column of count tables, which has one decimal place.

#include <string>
#include <vector>

#include "tcensus/bounds.hpp"
#include "tcensus/census.hpp"
#include "tcensus/elliptic.hpp"

namespace tcensus::io {

enum class Format { kCsv, kJson, kText };

// "csv", "json" or "text"; throws std::invalid_argument otherwise.
Format parse_format(const std::string& text);

// Header `M,p,count,bound,mode`, one row per prime, then p = union (whose
// bound is the sum of the per-prime bounds).
std::string census_csv(const CensusReport& report);
// Timings are included only when asked for.
std::string census_json(const CensusReport& report, bool with_timings = false);

// Accepts either rendering. CSV carries no |C(M)|, so it is recomputed.
CensusReport parse_census(const std::string& text);

std::string bounds_csv(const BoundsReport& report);
std::string bounds_json(const BoundsReport& report);
BoundsReport parse_bounds_json(const std::string& text);

std::string comparison_csv(std::int64_t max_coeff, const std::vector<ComparisonRow>& rows);
std::string comparison_json(std::int64_t max_coeff, const std::vector<ComparisonRow>& rows);
// {"bounds": ..., "comparison": ...}
std::string bounds_comparison_json(const BoundsReport& bounds,
                                   const std::vector<ComparisonRow>& rows);

// "trivial", "Z/7Z, generator (3,8)", "Z/2Z x Z/4Z, generators (..), (..)"
std::string torsion_text(const TorsionGroup& group);
std::string torsion_json(const CurvePair& curve, const TorsionGroup& group);

}  // namespace tcensus::io
