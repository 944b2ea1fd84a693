#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "cubics/census.hpp"
#include "cubics/jordan.hpp"

namespace cubics {

inline constexpr const char* kToolVersion = "1.0.0";

// One verification check. Numeric values are decimal strings so consumers
// never guess integer widths; reports are diffed in CI.
struct Check {
  std::string name;
  bool pass = false;
  std::string value;
  std::string expected;
  double seconds = 0.0;
};

struct Report {
  std::string version = kToolVersion;
  std::string suite;
  std::vector<Check> checks;
  bool overall = false;
};

// Suite ids mirror the claim labels the checks certify.
enum class SuiteId {
  thm1_2,
  thm2_1,
  example2_2,
  prop3_1,
  lemmaA1,
  lemmaA2,
  corA3,
  all,
};

std::optional<SuiteId> parse_suite(const std::string& s);
std::string suite_name(SuiteId id);

struct RunOptions {
  int threads = 1;
  bool verify_pgl3_f8 = false;
  std::string cache_path;  // census cache: read when present, written otherwise
};

// Census access shared by suites and subcommands: load the cache when the
// path names an existing file, otherwise compute (and write the cache when a
// path was given).
CachedCensus acquire_census(const RunOptions& options);

Report run_suite(SuiteId id, const RunOptions& options);

std::string report_to_json(const Report& report);
void print_report(const Report& report, std::FILE* out);

// classify-cubics payload.
std::string census_to_json(const CensusReport& report);

// jordan payload.
std::string jordan_to_json(const JordanReport& report);

}  // namespace cubics
