#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "tcensus/bounds.hpp"
#include "tcensus/census.hpp"
#include "tcensus/elliptic.hpp"
#include "tcensus/error.hpp"
#include "tcensus/report_io.hpp"

namespace tcensus::cli {
namespace {

struct TorsionArgs {
  std::string a;
  std::string b;
  std::string format = "text";
};

struct CensusArgs {
  std::int64_t max = 0;
  std::vector<int> primes{2, 3, 5, 7};
  std::string mode = "pairs";
  bool oracle = false;
  unsigned workers = 1;
  std::string format = "csv";
  std::string out;
  bool timings = false;
};

struct BoundsArgs {
  std::int64_t max = 0;
  std::string format = "csv";
  std::string census;
};

BigInt parse_integer(const std::string& text, const char* flag) {
  BigInt v;
  if (text.empty() || v.set_str(text, 10) != 0) {
    throw std::invalid_argument(std::string(flag) + ": '" + text + "' is not an integer");
  }
  return v;
}

int cmd_torsion(const TorsionArgs& args, std::ostream& out) {
  const io::Format format = io::parse_format(args.format);
  const CurvePair curve(parse_integer(args.a, "--A"), parse_integer(args.b, "--B"));
  const TorsionGroup group = torsion_subgroup(curve);
  if (format == io::Format::kJson) {
    out << io::torsion_json(curve, group);
  } else {
    out << io::torsion_text(group) << "\n";
  }
  return kOk;
}

void write_document(const std::string& doc, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << doc;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open '" + path + "' for writing");
  file << doc;
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

int cmd_census(const CensusArgs& args, std::ostream& out, std::ostream& err) {
  const io::Format format = io::parse_format(args.format);
  CensusConfig config;
  config.max_coeff = args.max;
  config.primes = args.primes;
  config.mode = parse_count_mode(args.mode);
  config.oracle = args.oracle;
  config.workers = args.workers;
  config.validate();
  const CensusReport report = run_census(config);
  if (args.timings) {
    for (const auto& t : report.timings) err << "phase " << t.phase << " " << t.seconds << " s\n";
  }
  const std::string doc = format == io::Format::kJson ? io::census_json(report, args.timings)
                                                      : io::census_csv(report);
  write_document(doc, args.out, out);
  return kOk;
}

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

int cmd_bounds(const BoundsArgs& args, std::ostream& out) {
  const io::Format format = io::parse_format(args.format);
  if (args.max < 2) throw std::invalid_argument("--max must be at least 2");
  const BoundsReport bounds = make_bounds_report(args.max);
  std::vector<ComparisonRow> rows;
  const bool compare = !args.census.empty();
  if (compare) {
    const CensusReport census = io::parse_census(read_file(args.census));
    rows = emit_comparison(census, bounds);
  }
  if (format == io::Format::kJson) {
    out << (compare ? io::bounds_comparison_json(bounds, rows) : io::bounds_json(bounds));
  } else {
    out << io::bounds_csv(bounds);
    if (compare) out << "\n" << io::comparison_csv(args.max, rows);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Census of short Weierstrass curves with rational torsion of prime order"};
  app.name("tcensus");
  app.require_subcommand(1);

  TorsionArgs targs;
  auto* torsion = app.add_subcommand("torsion", "Torsion subgroup of y^2 = x^3 + Ax + B");
  torsion->add_option("--A", targs.a, "coefficient A")->required()->allow_extra_args(false);
  torsion->add_option("--B", targs.b, "coefficient B")->required()->allow_extra_args(false);
  torsion->add_option("--format", targs.format, "text or json");

  CensusArgs cargs;
  auto* census = app.add_subcommand("census", "Count curves with a point of order p");
  census->add_option("--max", cargs.max, "coefficient bound M")->required();
  census->add_option("--primes", cargs.primes, "subset of 2,3,5,7")->delimiter(',');
  census->add_option("--mode", cargs.mode, "pairs or minimal");
  census->add_flag("--oracle", cargs.oracle, "brute-force Nagell-Lutz scan (M <= 1000)");
  census->add_option("--workers", cargs.workers, "worker threads");
  census->add_option("--format", cargs.format, "csv or json");
  census->add_option("--out", cargs.out, "output file (default stdout)");
  census->add_flag("--timings", cargs.timings, "log phases to stderr and include them in JSON");

  BoundsArgs bargs;
  auto* bounds = app.add_subcommand("bounds", "Theoretical upper bounds");
  bounds->add_option("--max", bargs.max, "coefficient bound M")->required();
  bounds->add_option("--format", bargs.format, "csv or json");
  bounds->add_option("--census", bargs.census, "census CSV or JSON to compare against");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*torsion) return cmd_torsion(targs, out);
    if (*census) return cmd_census(cargs, out, err);
    if (*bounds) return cmd_bounds(bargs, out);
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kInvariant;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace tcensus::cli
