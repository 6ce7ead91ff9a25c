#include "tcensus/report_io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace tcensus::io {

using nlohmann::json;

namespace {

double rounded(double v) { return std::stod(format_real(v)); }

// nlohmann's dump with reals rendered at 15 significant digits; its own float
// printer does not always pick the shortest form.
void dump_to(const json& j, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + json(k).dump() + ": ";
      dump_to(v, depth + 1, out);
    }
    out += "\n" + close + "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += pad;
      dump_to(j[i], depth + 1, out);
    }
    out += "\n" + close + "]";
  } else if (j.is_number_float()) {
    out += format_real(j.get<double>());
  } else {
    out += j.dump();
  }
}

std::string dump(const json& j) {
  std::string out;
  dump_to(j, 0, out);
  return out + "\n";
}

std::string one_decimal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

json big_json(const BigInt& v) {
  if (mpz_fits_slong_p(v.get_mpz_t())) return v.get_si();
  return v.get_str();
}

BigInt big_from(const json& j) {
  if (j.is_string()) return BigInt(j.get<std::string>());
  if (j.is_number_unsigned()) return BigInt(std::to_string(j.get<std::uint64_t>()));
  return BigInt(std::to_string(j.get<std::int64_t>()));
}

std::string key(int p) { return std::to_string(p); }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

CensusReport parse_census_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "M,p,count,bound,mode") {
    throw std::invalid_argument("census CSV: missing header M,p,count,bound,mode");
  }
  CensusReport r;
  bool seen_row = false;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    const auto cells = split(line, ',');
    if (cells.size() != 5) throw std::invalid_argument("census CSV: bad row '" + line + "'");
    const std::int64_t m = std::stoll(cells[0]);
    const CountMode mode = parse_count_mode(cells[4]);
    if (seen_row && (m != r.max_coeff || mode != r.mode)) {
      throw std::invalid_argument("census CSV: rows disagree on M or mode");
    }
    r.max_coeff = m;
    r.mode = mode;
    seen_row = true;
    const BigInt count(cells[2]);
    if (cells[1] == "union") {
      r.t_union = count;
      continue;
    }
    const int p = std::stoi(cells[1]);
    r.t_counts[p] = count;
    if (!cells[3].empty()) r.bounds[p] = std::stod(cells[3]);
  }
  if (!seen_row) throw std::invalid_argument("census CSV: no rows");
  r.c_count = r.mode == CountMode::kPairs ? count_C(r.max_coeff) : count_C_minimal(r.max_coeff);
  return r;
}

CensusReport parse_census_json(const std::string& text) {
  const json j = json::parse(text);
  CensusReport r;
  r.max_coeff = j.at("M").get<std::int64_t>();
  r.mode = parse_count_mode(j.at("mode").get<std::string>());
  r.oracle = j.at("oracle").get<bool>();
  r.c_count = big_from(j.at("c_count"));
  for (const auto& [p, v] : j.at("t_counts").items()) r.t_counts[std::stoi(p)] = big_from(v);
  r.t_union = big_from(j.at("t_union"));
  for (const auto& [p, v] : j.at("bounds").items()) r.bounds[std::stoi(p)] = v.get<double>();
  if (j.contains("timings")) {
    for (const auto& t : j.at("timings")) {
      r.timings.push_back({t.at("phase").get<std::string>(), t.at("seconds").get<double>()});
    }
  }
  return r;
}

}  // namespace

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::kCsv;
  if (text == "json") return Format::kJson;
  if (text == "text") return Format::kText;
  throw std::invalid_argument("unknown format '" + text + "' (expected csv, json or text)");
}

std::string census_csv(const CensusReport& r) {
  std::string out = "M,p,count,bound,mode\n";
  const std::string m = std::to_string(r.max_coeff);
  const std::string mode = to_string(r.mode);
  double total = 0;
  for (const auto& [p, count] : r.t_counts) {
    std::string bound;
    if (auto it = r.bounds.find(p); it != r.bounds.end()) {
      bound = one_decimal(it->second);
      total += it->second;
    }
    out += m + "," + key(p) + "," + count.get_str() + "," + bound + "," + mode + "\n";
  }
  const std::string union_bound = r.bounds.empty() ? "" : one_decimal(total);
  out += m + ",union," + r.t_union.get_str() + "," + union_bound + "," + mode + "\n";
  return out;
}

std::string census_json(const CensusReport& r, bool with_timings) {
  json j;
  j["M"] = r.max_coeff;
  j["mode"] = to_string(r.mode);
  j["oracle"] = r.oracle;
  j["c_count"] = big_json(r.c_count);
  j["t_counts"] = json::object();
  for (const auto& [p, n] : r.t_counts) j["t_counts"][key(p)] = big_json(n);
  j["t_union"] = big_json(r.t_union);
  j["bounds"] = json::object();
  for (const auto& [p, b] : r.bounds) j["bounds"][key(p)] = rounded(b);
  if (r.c_count != 0) {
    const Density d = density(r);
    j["density"] = {{"exact", d.exact.get_str()}, {"decimal", d.decimal}};
  }
  if (with_timings) {
    j["timings"] = json::array();
    for (const auto& t : r.timings) {
      j["timings"].push_back({{"phase", t.phase}, {"seconds", rounded(t.seconds)}});
    }
  }
  return dump(j);
}

CensusReport parse_census(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_census_json(text);
  return parse_census_csv(text);
}

std::string bounds_csv(const BoundsReport& r) {
  std::string out = "M,quantity,value\n";
  const std::string m = std::to_string(r.max_coeff);
  auto row = [&](const std::string& name, const std::string& value) {
    out += m + "," + name + "," + value + "\n";
  };
  for (const auto& [p, b] : r.torsion_bounds) row("torsion_bound_p" + key(p), format_real(b));
  for (const auto& s : r.schmidt) {
    const std::string pre = "schmidt_p" + key(s.prime) + "_";
    row(pre + "r", std::to_string(s.r));
    row(pre + "s", std::to_string(s.s));
    row(pre + "forms", std::to_string(s.forms));
    row(pre + "h_loose", format_real(s.h_loose));
    row(pre + "h_tight", format_real(s.h_tight));
    row(pre + "bound_loose", format_real(s.bound_loose));
    row(pre + "bound_tight", format_real(s.bound_tight));
  }
  row("prime_zeta_4", format_real(r.prime_zeta_4));
  row("prime_zeta_6", format_real(r.prime_zeta_6));
  row("c_lower_pairs", format_real(r.c_lower_pairs));
  row("c_lower_iso", format_real(r.c_lower_iso));
  return out;
}

namespace {

json bounds_doc(const BoundsReport& r) {
  json j;
  j["M"] = r.max_coeff;
  j["torsion_bounds"] = json::object();
  for (const auto& [p, b] : r.torsion_bounds) j["torsion_bounds"][key(p)] = rounded(b);
  j["schmidt"] = json::array();
  for (const auto& s : r.schmidt) {
    j["schmidt"].push_back({{"prime", s.prime},
                            {"r", s.r},
                            {"s", s.s},
                            {"forms", s.forms},
                            {"h_loose", rounded(s.h_loose)},
                            {"h_tight", rounded(s.h_tight)},
                            {"bound_loose", rounded(s.bound_loose)},
                            {"bound_tight", rounded(s.bound_tight)}});
  }
  j["prime_zeta"] = {{"4", rounded(r.prime_zeta_4)}, {"6", rounded(r.prime_zeta_6)}};
  j["c_lower_pairs"] = rounded(r.c_lower_pairs);
  j["c_lower_iso"] = rounded(r.c_lower_iso);
  return j;
}

}  // namespace

std::string bounds_json(const BoundsReport& r) { return dump(bounds_doc(r)); }

BoundsReport parse_bounds_json(const std::string& text) {
  const json j = json::parse(text);
  BoundsReport r;
  r.max_coeff = j.at("M").get<std::int64_t>();
  for (const auto& [p, v] : j.at("torsion_bounds").items()) {
    r.torsion_bounds[std::stoi(p)] = v.get<double>();
  }
  for (const auto& s : j.at("schmidt")) {
    SchmidtInputs in;
    in.prime = s.at("prime").get<int>();
    in.r = s.at("r").get<int>();
    in.s = s.at("s").get<int>();
    in.forms = s.at("forms").get<int>();
    in.h_loose = s.at("h_loose").get<double>();
    in.h_tight = s.at("h_tight").get<double>();
    in.bound_loose = s.at("bound_loose").get<double>();
    in.bound_tight = s.at("bound_tight").get<double>();
    r.schmidt.push_back(in);
  }
  r.prime_zeta_4 = j.at("prime_zeta").at("4").get<double>();
  r.prime_zeta_6 = j.at("prime_zeta").at("6").get<double>();
  r.c_lower_pairs = j.at("c_lower_pairs").get<double>();
  r.c_lower_iso = j.at("c_lower_iso").get<double>();
  return r;
}

namespace {

constexpr const char* kIsoNote =
    "c_lower_iso subtracts the product P(4)*P(6); the pairs removed by some l^4 | A, "
    "l^6 | B make up about P(10) of the box";

}  // namespace

std::string comparison_csv(std::int64_t max_coeff, const std::vector<ComparisonRow>& rows) {
  std::string out = "M,p,count,bound,ratio\n";
  for (const auto& row : rows) {
    out += std::to_string(max_coeff) + "," + key(row.prime) + "," + row.count.get_str() + "," +
           one_decimal(row.bound) + "," + format_real(row.ratio) + "\n";
  }
  out += std::string("# ") + kIsoNote + "\n";
  return out;
}

namespace {

json comparison_doc(std::int64_t max_coeff, const std::vector<ComparisonRow>& rows) {
  json j;
  j["M"] = max_coeff;
  j["rows"] = json::array();
  for (const auto& row : rows) {
    j["rows"].push_back({{"p", row.prime},
                         {"count", big_json(row.count)},
                         {"bound", rounded(row.bound)},
                         {"ratio", rounded(row.ratio)}});
  }
  j["note"] = kIsoNote;
  return j;
}

}  // namespace

std::string comparison_json(std::int64_t max_coeff, const std::vector<ComparisonRow>& rows) {
  return dump(comparison_doc(max_coeff, rows));
}

std::string bounds_comparison_json(const BoundsReport& bounds,
                                   const std::vector<ComparisonRow>& rows) {
  json j;
  j["bounds"] = bounds_doc(bounds);
  j["comparison"] = comparison_doc(bounds.max_coeff, rows);
  return dump(j);
}

std::string torsion_text(const TorsionGroup& group) {
  std::string out = group.structure.to_string();
  if (group.generators.empty()) return out;
  out += group.generators.size() == 1 ? ", generator " : ", generators ";
  for (std::size_t i = 0; i < group.generators.size(); ++i) {
    if (i) out += ", ";
    out += group.generators[i].to_string();
  }
  return out;
}

std::string torsion_json(const CurvePair& curve, const TorsionGroup& group) {
  json j;
  j["A"] = big_json(curve.a());
  j["B"] = big_json(curve.b());
  j["structure"] = group.structure.to_string();
  j["order"] = group.structure.order();
  j["generators"] = json::array();
  for (const auto& g : group.generators) j["generators"].push_back(g.to_string());
  j["points"] = json::array();
  for (const auto& tp : group.points) {
    j["points"].push_back({{"point", tp.point.to_string()}, {"order", tp.order}});
  }
  return dump(j);
}

}  // namespace tcensus::io
